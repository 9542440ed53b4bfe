mod common;

use common::{fixture_groups, fixtures};
use motivium_core::json::{self, ContextJson, ModuleJson, TitsBundleJson, TraceBundleJson};
use motivium_core::modrep::decompose;
use motivium_core::motexpr::higher_trace_compare;
use motivium_core::titsdex::motivic_equiv_check;
use motivium_core::Error;

#[test]
fn group_fixtures_have_expected_orders() {
    let orders: Vec<(String, usize)> = fixture_groups().into_iter().map(|(n, g)| (n, g.order())).collect();
    let expect = [
        ("A4", 12),
        ("C2", 2),
        ("C2xC4", 8),
        ("C3", 3),
        ("C3xS3", 18),
        ("C4", 4),
        ("C5", 5),
        ("C6", 6),
        ("C7", 7),
        ("C8", 8),
        ("D4", 8),
        ("D5", 10),
        ("D6", 12),
        ("Q8", 8),
        ("S3", 6),
        ("S4", 24),
        ("V4", 4),
    ];
    let expect: Vec<(String, usize)> = expect.iter().map(|(n, o)| (n.to_string(), *o)).collect();
    assert_eq!(orders, expect);
}

fn module(name: &str) -> Result<motivium_core::GModule, Error> {
    let path = fixtures().join(name);
    json::read::<ModuleJson>(&path)?.build(None, None, &json::base_dir(&path))
}

#[test]
fn module_fixtures() {
    let f7 = module("f7_c3.json").unwrap();
    assert_eq!(decompose(&f7, 0).dims(), [1, 1, 1]);
    let f2 = module("f2_c3.json").unwrap();
    assert_eq!(decompose(&f2, 0).dims(), [1, 2]);
    assert_eq!(module("modules/zero_c3.json").unwrap().dim(), 0);
    assert!(module("modules/bad_relation.json").unwrap_err().is_invariant_violation());
    assert!(matches!(module("modules/malformed.json"), Err(Error::Schema(_))));
    assert!(matches!(module("modules/wrong_type.json"), Err(Error::Schema(_))));
}

#[test]
fn tits_fixtures() {
    let verdict = |name: &str| {
        let path = fixtures().join(name);
        let b = json::read::<TitsBundleJson>(&path)?.build(&json::base_dir(&path))?;
        motivic_equiv_check(&b.left, &b.right, &b.phi)
    };
    assert!(verdict("tits/identical.json").unwrap().is_pass());
    assert!(!verdict("tits/perturbed_special.json").unwrap().is_pass());
    assert!(verdict("tits/perturbed_nonspecial.json").unwrap().is_pass());
    assert!(matches!(verdict("tits/nonequivariant.json"), Err(Error::NotEquivariant(_))));
    assert!(matches!(verdict("tits/bad_star.json"), Err(Error::InvalidDiagram(_))));
    let path = fixtures().join("tits/a3_outer_context.json");
    let ctx = json::read::<ContextJson>(&path).unwrap().build(&json::base_dir(&path)).unwrap();
    assert_eq!(ctx.len(), 8);
}

#[test]
fn trace_fixtures() {
    let verdict = |name: &str| {
        let path = fixtures().join(name);
        let b = json::read::<TraceBundleJson>(&path).unwrap().build(None, &json::base_dir(&path)).unwrap();
        higher_trace_compare(&b.left, &b.right).unwrap()
    };
    assert_eq!(verdict("trace/counterexample.json").witness().unwrap().label, "F");
    for name in ["trace/anisotropic.json", "trace/identical.json", "trace/tensor_round_trip.json"] {
        assert!(verdict(name).is_pass(), "{name}");
    }
}
