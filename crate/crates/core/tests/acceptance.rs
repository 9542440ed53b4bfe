//! Acceptance suite: runs every criterion, prints one line per criterion and
//! exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{brute_force_decomposable, fixture_groups, fixtures, random_invertible};
use indexmap::IndexMap;
use motivium_core::artin::{ArtinMotive, FieldEntry, GaloisContext, BASE, TOP};
use motivium_core::groups::named::cyclic;
use motivium_core::groups::{all_subgroups, double_cosets};
use motivium_core::json::{self, TitsBundleJson};
use motivium_core::modrep::{decompose, hom_space, is_indecomposable, is_isomorphic, perm_module, trivial_multiplicity};
use motivium_core::motexpr::{
    higher_trace_compare, motive_isomorphic, tate_trace, AUpperLabel, FormalMotive, FormalSummand, VarietyCatalog,
    VarietySpec, POINT,
};
use motivium_core::titsdex::{condition_i_check, motivic_equiv_check, DiagramIso, TitsGroupDatum, VertexSet, WitnessKind};
use motivium_core::{FiniteGroup, GModule, GSet, PrimeField, Subgroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn characters(m: &GModule) -> Vec<u32> {
    let mut c: Vec<u32> = decompose(m, 0)
        .summands()
        .iter()
        .flat_map(|s| std::iter::repeat_n(s.module.character_values().unwrap()[0], s.multiplicity))
        .collect();
    c.sort_unstable();
    c
}

fn c1_regular_c2() -> Outcome {
    let c2 = cyclic(2);
    for p in [3, 5, 7] {
        let m = perm_module(&GSet::natural(&c2), field(p));
        let d = decompose(&m, 0);
        ensure!(d.summands().len() == 2 && d.dims() == [1, 1], "p = {p}: {:?}", d.dims());
        ensure!(characters(&m) == [1, p - 1], "p = {p}: characters {:?}", characters(&m));
    }
    Ok("F_p[Z/2] = trivial + sign for p = 3, 5, 7".into())
}

fn c2_f2_c3() -> Outcome {
    let c3 = cyclic(3);
    let m = perm_module(&GSet::natural(&c3), field(2));
    let d = decompose(&m, 0);
    ensure!(d.dims() == [1, 2], "dims {:?}", d.dims());
    let [t, a] = d.summands() else { return Err("expected two classes".into()) };
    ensure!(t.module.is_trivial() && t.residue_degree == 1, "rank-one summand is not trivial");
    ensure!(a.residue_degree == 2, "residue degree {}", a.residue_degree);
    ensure!(is_indecomposable(&a.module).unwrap(), "A decomposes");
    let res = a.module.restrict(&Subgroup::trivial(&c3)).unwrap();
    ensure!(trivial_multiplicity(&res) == 2, "A over E is not F + F");
    Ok("F_2[Z/3] = F + A, End(A)/rad = F_4, A_E = F + F".into())
}

fn c3_f7_c3() -> Outcome {
    let c3 = cyclic(3);
    let f7 = field(7);
    let m = perm_module(&GSet::natural(&c3), f7);
    ensure!(characters(&m) == [1, 2, 4], "characters {:?}", characters(&m));
    let ctx = GaloisContext::builder(&c3).build().unwrap();
    let chi = |c| ArtinMotive::new(&ctx, BASE, GModule::character(&c3, f7, &[c]).unwrap(), None).unwrap();
    let (one, a1, a2) = (chi(1), chi(2), chi(4));
    ensure!(a1.picard_order() == Some(3) && a2.picard_order() == Some(3), "Picard orders");
    ensure!(a1.tensor(&a2).unwrap().is_isomorphic(&one).unwrap(), "A1 (x) A2 is not F");
    ensure!(a1.tensor_power(3).is_isomorphic(&one).unwrap(), "A1^3 is not F");
    ensure!(!a1.is_isomorphic(&one).unwrap(), "A1 is trivial");
    Ok("characters {1, 2, 4}, both of order 3, A1 A2 = A1^3 = F".into())
}

fn c4_counterexample() -> Outcome {
    let c3 = cyclic(3);
    let f7 = field(7);
    let ctx = GaloisContext::builder(&c3).build().unwrap();
    let cat = VarietyCatalog::new(&ctx, &[]).unwrap();
    let motive = |c| {
        let a = ArtinMotive::new(&ctx, BASE, GModule::character(&c3, f7, &[c]).unwrap(), None).unwrap();
        let label = AUpperLabel::new(&cat, POINT, a).unwrap();
        FormalMotive::new(&cat, vec![FormalSummand { label, shift: 0, mult: 1 }]).unwrap()
    };
    let (m1, m2) = (motive(2), motive(4));
    ensure!(!motive_isomorphic(&m1, &m2).unwrap(), "A1 and A2 reported isomorphic");
    for k in ctx.labels() {
        ensure!(tate_trace(&m1, k).unwrap() == tate_trace(&m2, k).unwrap(), "Tate traces differ at {k}");
    }
    let v = higher_trace_compare(&m1, &m2).unwrap();
    ensure!(v.witness().map(|w| w.label.as_str()) == Some("F"), "verdict {v:?}");
    Ok("not isomorphic, equal Tate traces, Artin-Tate traces differ at F".into())
}

fn c5_krull_schmidt() -> Outcome {
    let mut runs = 0;
    for (name, g) in fixture_groups() {
        if g.order() > 24 {
            continue;
        }
        for h in all_subgroups(&g) {
            let x = GSet::coset_space(&g, &h).unwrap();
            for p in [2, 3, 5, 7] {
                let m = perm_module(&x, field(p));
                let base = decompose(&m, 0);
                ensure!(base.total_dim() == h.index(), "{name}/{}: dimension lost", h.order());
                for seed in 1..10 {
                    let d = decompose(&m, seed);
                    ensure!(d.total_dim() == m.dim(), "{name}: dimension lost at seed {seed}");
                    ensure!(
                        d.same_classes(&base),
                        "{name}, |H| = {}, p = {p}: seed {seed} gives {:?} vs {:?}",
                        h.order(),
                        d.dims(),
                        base.dims()
                    );
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("{runs} seeded decompositions agree"))
}

fn c6_oracle() -> Outcome {
    let mut modules: Vec<(String, GModule)> = Vec::new();
    for (name, g) in fixture_groups() {
        for h in all_subgroups(&g) {
            if h.index() > 6 {
                continue;
            }
            for p in [2, 3] {
                let m = perm_module(&GSet::coset_space(&g, &h).unwrap(), field(p));
                let summands = decompose(&m, 0);
                for s in summands.summands() {
                    if s.module.dim() > 1 {
                        modules.push((format!("{name}: summand of F_{p}[G/H], |H| = {}", h.order()), s.module.clone()));
                    }
                    if 2 * s.module.dim() <= 4 {
                        let sq = s.module.direct_sum(&s.module).unwrap();
                        modules.push((format!("{name}: doubled summand over F_{p}"), sq));
                    }
                }
                modules.push((format!("{name}: F_{p}[G/H], |H| = {}", h.order()), m));
            }
        }
    }
    let mut agree = 0;
    for (what, m) in &modules {
        let fast = is_indecomposable(m).unwrap();
        let slow = !brute_force_decomposable(m);
        ensure!(fast == slow, "{what}: is_indecomposable = {fast}, enumeration = {slow}");
        agree += 1;
    }
    Ok(format!("{agree}/{} modules agree", modules.len()))
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.random_range(0..xs.len())]
}

/// Permutation module of a random coset space, possibly replaced by one of its
/// summands, in a random basis.
fn random_module(g: &Arc<FiniteGroup>, p: u32, rng: &mut ChaCha8Rng) -> GModule {
    let subs = all_subgroups(g);
    let h = pick(rng, &subs);
    let mut m = perm_module(&GSet::coset_space(g, h).unwrap(), field(p));
    if rng.random_bool(0.5) {
        let d = decompose(&m, rng.random());
        m = pick(rng, d.summands()).module.clone();
    }
    let b = random_invertible(m.field(), m.dim(), rng);
    m.change_basis(&b).unwrap()
}

fn c7_frobenius() -> Outcome {
    let groups: Vec<_> = fixture_groups().into_iter().filter(|(_, g)| g.order() <= 12).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let (name, g) = pick(&mut rng, &groups).clone();
        let p = *pick(&mut rng, &[2, 3, 5, 7]);
        let subs = all_subgroups(&g);
        let h = pick(&mut rng, &subs).clone();
        let m = random_module(h.as_group(), p, &mut rng);
        let n = random_module(&g, p, &mut rng);
        let left = hom_space(&m.induce(&g).unwrap(), &n).unwrap().len();
        let right = hom_space(&m, &n.restrict(&h).unwrap()).unwrap().len();
        ensure!(left == right, "instance {i} ({name}, |H| = {}, p = {p}): {left} vs {right}", h.order());
    }
    Ok("100/100 instances".into())
}

fn c8_mackey() -> Outcome {
    let groups = fixture_groups();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 50 {
        let (name, g) = pick(&mut rng, &groups).clone();
        let subs = all_subgroups(&g);
        let (h, k) = (pick(&mut rng, &subs).clone(), pick(&mut rng, &subs).clone());
        if h.index() * k.index() > 48 {
            continue;
        }
        let p = *pick(&mut rng, &[2, 3, 5, 7]);
        let (x, y) = (GSet::coset_space(&g, &h).unwrap(), GSet::coset_space(&g, &k).unwrap());
        let mx = perm_module(&x, field(p));
        let mx = mx.change_basis(&random_invertible(mx.field(), mx.dim(), &mut rng)).unwrap();
        let tensor = mx.tensor(&perm_module(&y, field(p))).unwrap();
        let prod = x.product(&y).unwrap();
        ensure!(
            is_isomorphic(&tensor, &perm_module(&prod, field(p))).unwrap(),
            "{name}: F[G/H] (x) F[G/K] is not F[G/H x G/K] (p = {p})"
        );
        let orbits = prod.orbits().len();
        let dc = double_cosets(&g, &h, &k).unwrap().len();
        ensure!(orbits == dc, "{name}: {orbits} orbits vs {dc} double cosets");
        done += 1;
    }
    Ok("50/50 instances".into())
}

fn tits_fixture() -> (TitsGroupDatum, TitsGroupDatum, DiagramIso) {
    let path = fixtures().join("tits/identical.json");
    let b = json::read::<TitsBundleJson>(&path).unwrap().build(&json::base_dir(&path)).unwrap();
    (b.left, b.right, b.phi)
}

fn with_table(d: &TitsGroupDatum, table: IndexMap<String, VertexSet>) -> Option<TitsGroupDatum> {
    TitsGroupDatum::new(d.star().clone(), table, d.p_consistent()).ok()
}

/// Valid tables obtained by toggling one ∗-orbit in one row.
fn perturbations(d: &TitsGroupDatum) -> Vec<(String, VertexSet, TitsGroupDatum)> {
    let mut out = Vec::new();
    for k in d.table().keys() {
        for orbit in d.star().orbits(k).unwrap() {
            let mut table = d.table().clone();
            let row = table.get_mut(k).unwrap();
            let orbit: VertexSet = orbit.into_iter().collect();
            *row = row.symmetric_difference(&orbit).copied().collect();
            if let Some(t) = with_table(d, table) {
                out.push((k.clone(), orbit, t));
            }
        }
    }
    out
}

fn all_special(d: &TitsGroupDatum) -> TitsGroupDatum {
    let ctx = d.context();
    let fields: IndexMap<String, FieldEntry> = ctx
        .labels()
        .map(|k| {
            let e = FieldEntry { subgroup: ctx.subgroup(k).unwrap().clone(), p_special: true };
            (k.to_string(), e)
        })
        .collect();
    let order = ctx.declared_order().to_vec();
    let special = GaloisContext::new(Arc::clone(ctx.gamma()), fields, order).unwrap();
    let images: Vec<Vec<usize>> = ctx
        .gamma()
        .generators()
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let e = ctx.gamma().generator_index(i);
            (0..d.diagram().len()).map(|v| d.star().act(e, v)).collect()
        })
        .collect();
    let star = motivium_core::titsdex::StarAction::new(&special, d.diagram(), &images).unwrap();
    TitsGroupDatum::new(star, d.table().clone(), d.p_consistent()).unwrap()
}

fn c9_tits() -> Outcome {
    let (left, right, phi) = tits_fixture();
    let ctx = left.context();
    ensure!(motivic_equiv_check(&left, &right, &phi).unwrap().is_pass(), "identical tables fail");
    let (mut special, mut other) = (0, 0);
    for (k, orbit, t) in perturbations(&right) {
        let v = motivic_equiv_check(&left, &t, &phi).unwrap();
        if ctx.is_p_special(&k).unwrap() {
            let w = v.witness().ok_or_else(|| format!("toggling {orbit:?} at {k} passes"))?;
            let expected = t.diagram().subset_labels(&orbit);
            ensure!(
                w.label == k && w.kind == WitnessKind::IndexMismatch && w.vertices == expected,
                "toggling {orbit:?} at {k}: witness {w:?}"
            );
            special += 1;
        } else {
            ensure!(v.is_pass(), "toggling {orbit:?} at non-p-special {k} fails");
            other += 1;
        }
    }
    ensure!(special >= 10, "only {special} p-special perturbations");
    let (sl, sr) = (all_special(&left), all_special(&right));
    let sphi = DiagramIso::by_labels(&sl, &sr).unwrap();
    let mut tables = vec![sr.clone()];
    tables.extend(perturbations(&sr).into_iter().map(|(_, _, t)| t));
    for t in &tables {
        let a = condition_i_check(&sl, t, &sphi, &VertexSet::new()).unwrap();
        let b = motivic_equiv_check(&sl, t, &sphi).unwrap();
        ensure!(a.is_pass() == b.is_pass(), "condition (i) at the empty set disagrees: {a:?} vs {b:?}");
    }
    Ok(format!(
        "{special} p-special perturbations fail with witness, {other} others pass, {} tables agree under all-p-special flags",
        tables.len()
    ))
}

struct Trace {
    cat: Arc<VarietyCatalog>,
    classes: Vec<ArtinMotive>,
    equivalents: BTreeMap<String, Vec<String>>,
}

fn trace_setup(p: u32) -> Trace {
    let path = fixtures().join("groups/S3.json");
    let g = json::read::<json::GroupJson>(&path).unwrap().build().unwrap();
    let t = Subgroup::from_generator_indices(&g, &[0]).unwrap();
    let c = Subgroup::from_generator_indices(&g, &[1]).unwrap();
    let ctx = GaloisContext::builder(&g)
        .field("K", t, false)
        .field("Q", c, true)
        .build()
        .unwrap();
    let spec = |l: &str, dom: &[&str], iso: &[&str]| VarietySpec {
        label: l.into(),
        dominates: dom.iter().map(|s| s.to_string()).collect(),
        isotropy: iso.iter().map(|k| (k.to_string(), true)).collect(),
    };
    let specs = [
        spec("X", &["X2"], &["K"]),
        spec("X2", &["X"], &["K"]),
        spec("Y", &["Y2"], &["Q"]),
        spec("Y2", &["Y"], &["Q"]),
        spec("Z", &["X", "Y"], &[TOP]),
        spec("W", &[], &[]),
        spec("P", &[], &[BASE]),
    ];
    let cat = VarietyCatalog::new(&ctx, &specs).unwrap();
    let mut classes: Vec<ArtinMotive> = Vec::new();
    for h in all_subgroups(&g) {
        let m = ArtinMotive::new(&ctx, BASE, perm_module(&GSet::coset_space(&g, &h).unwrap(), field(p)), None).unwrap();
        for (a, _) in m.decompose(0) {
            if !classes.iter().any(|b| b.is_isomorphic(&a).unwrap()) {
                classes.push(a);
            }
        }
    }
    let labels: Vec<String> = cat.labels().map(str::to_string).collect();
    let equivalents = labels
        .iter()
        .map(|a| {
            let eq = labels.iter().filter(|b| cat.equivalent(a, b).unwrap()).cloned().collect();
            (a.clone(), eq)
        })
        .collect();
    Trace { cat, classes, equivalents }
}

fn c10_isomorphic_traces() -> Outcome {
    let setups = [trace_setup(2), trace_setup(3)];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..200 {
        let s = &setups[i % 2];
        let varieties: Vec<&String> = s.equivalents.keys().collect();
        let n = rng.random_range(1..=5);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for _ in 0..n {
            let v = *pick(&mut rng, &varieties);
            let a = pick(&mut rng, &s.classes).clone();
            let (shift, mult) = (rng.random_range(0..4), rng.random_range(1..=3));
            left.push(FormalSummand { label: AUpperLabel::new(&s.cat, v, a.clone()).unwrap(), shift, mult });
            let split = rng.random_range(1..=mult);
            for part in [split, mult - split] {
                if part == 0 {
                    continue;
                }
                let v2 = pick(&mut rng, &s.equivalents[v]);
                let b = random_invertible(a.field(), a.dim(), &mut rng);
                let moved = ArtinMotive::new(a.context(), BASE, a.module().change_basis(&b).unwrap(), None).unwrap();
                right.push(FormalSummand { label: AUpperLabel::new(&s.cat, v2, moved).unwrap(), shift, mult: part });
            }
        }
        right.shuffle(&mut rng);
        let m = FormalMotive::new(&s.cat, left).unwrap();
        let n = FormalMotive::new(&s.cat, right).unwrap();
        ensure!(motive_isomorphic(&m, &n).unwrap(), "pair {i} is not isomorphic");
        let v = higher_trace_compare(&m, &n).unwrap();
        ensure!(v.is_pass(), "pair {i}: {v:?}");
    }
    Ok("200/200 isomorphic pairs pass".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("F_p[Z/2] for p = 3, 5, 7", c1_regular_c2, Duration::from_secs(1)),
        ("F_2[Z/3] and restriction of A", c2_f2_c3, Duration::from_secs(1)),
        ("F_7[Z/3], Picard orders, tensor relations", c3_f7_c3, Duration::from_secs(1)),
        ("Tate trace counterexample", c4_counterexample, Duration::from_secs(1)),
        ("Krull-Schmidt stability across seeds", c5_krull_schmidt, Duration::from_secs(60)),
        ("indecomposability vs subspace enumeration", c6_oracle, Duration::from_secs(120)),
        ("Frobenius reciprocity", c7_frobenius, Duration::from_secs(30)),
        ("Mackey product compatibility", c8_mackey, Duration::from_secs(120)),
        ("Tits p-index checker", c9_tits, Duration::from_secs(1)),
        ("isomorphic motives have equal traces", c10_isomorphic_traces, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > *limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
