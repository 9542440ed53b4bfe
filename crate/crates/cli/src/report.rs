//! JSON reports emitted by the commands.

use std::collections::BTreeMap;
use std::path::Path;

use motivium_core::artin::{ArtinMotive, GaloisContext, BASE};
use motivium_core::json::{self, ContextJson, GroupJson, ModuleJson, TitsBundle, TitsBundleJson, TitsCheck, TraceBundle, TraceBundleJson};
use motivium_core::modrep::decompose;
use motivium_core::motexpr::{artin_tate_trace, higher_trace_compare, motive_isomorphic, tate_trace, TraceVerdict, TRACE_SCOPE};
use motivium_core::titsdex::{Verdict, WitnessKind};
use motivium_core::{Error, GModule, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Default)]
pub struct InputHash(Sha256);

impl InputHash {
    pub fn add(&mut self, bytes: &[u8]) {
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    pub fn finish(self) -> String {
        format!("{:x}", self.0.finalize())
    }
}

#[derive(Serialize)]
pub struct Report {
    command: &'static str,
    seed: u64,
    input_sha256: String,
    #[serde(flatten)]
    body: Value,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, input_sha256: String, body: Value) -> Self {
        Self { command, seed, input_sha256, body }
    }
}

fn action(m: &GModule) -> Value {
    json!(ModuleJson::of(m).action)
}

pub fn decomposition(m: &GModule, seed: u64) -> Value {
    let d = decompose(m, seed);
    let summands: Vec<Value> = d
        .summands()
        .iter()
        .map(|s| {
            let mut v = json!({
                "dim": s.module.dim(),
                "multiplicity": s.multiplicity,
                "residue_degree": s.residue_degree,
                "action": action(&s.module),
            });
            if let Some(c) = s.module.character_values() {
                v["character"] = json!(c);
            }
            v
        })
        .collect();
    json!({
        "p": m.prime(),
        "group_order": m.group().order(),
        "dim": m.dim(),
        "summands": summands,
    })
}

pub fn module(m: &GModule, decompose: bool, seed: u64) -> Value {
    let mut v = json!({ "module": ModuleJson::of(m) });
    if decompose {
        v["decomposition"] = decomposition(m, seed);
    }
    v
}

pub fn picard(m: &GModule, seed: u64) -> Result<Value> {
    let ctx = GaloisContext::builder(m.group()).build()?;
    let a = ArtinMotive::new(&ctx, BASE, m.clone(), None)?;
    let summands: Vec<Value> = a
        .decompose(seed)
        .iter()
        .map(|(s, mult)| {
            json!({
                "dim": s.dim(),
                "multiplicity": mult,
                "picard_order": s.picard_order(),
                "character": s.module().character_values(),
            })
        })
        .collect();
    Ok(json!({
        "p": m.prime(),
        "dim": m.dim(),
        "picard_order": a.picard_order(),
        "summands": summands,
    }))
}

fn verdict_word(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn tits(b: &TitsBundle, v: &Verdict) -> Value {
    let witness = v.witness().map(|w| {
        json!({
            "label": w.label,
            "kind": match w.kind {
                WitnessKind::Distinguished => "distinguished",
                WitnessKind::IndexMismatch => "index_mismatch",
            },
            "vertices": w.vertices,
        })
    });
    let mut out = json!({
        "check": match b.check {
            TitsCheck::Motivic => "motivic",
            TitsCheck::ConditionI => "condition_i",
        },
        "verdict": verdict_word(v.is_pass()),
        "witness": witness,
    });
    if b.check == TitsCheck::ConditionI {
        out["tau0"] = json!(b.left.diagram().subset_labels(&b.tau0));
    }
    out
}

fn trace_list(m: &motivium_core::FormalMotive, k: &str) -> Result<Value> {
    Ok(artin_tate_trace(m, k)?
        .iter()
        .map(|t| {
            json!({
                "shift": t.shift,
                "dim": t.artin.dim(),
                "mult": t.mult,
                "action": action(t.artin.module()),
            })
        })
        .collect())
}

/// Report and whether the traces agree.
pub fn traces(b: &TraceBundle) -> Result<(Value, bool)> {
    let ctx = b.catalog.context();
    let mut per_label = serde_json::Map::new();
    let mut tate_equal = true;
    for k in ctx.labels() {
        let (tl, tr) = (tate_trace(&b.left, k)?, tate_trace(&b.right, k)?);
        tate_equal &= tl == tr;
        per_label.insert(
            k.to_string(),
            json!({
                "left": trace_list(&b.left, k)?,
                "right": trace_list(&b.right, k)?,
                "tate": { "left": tl, "right": tr },
            }),
        );
    }
    let verdict = higher_trace_compare(&b.left, &b.right)?;
    let witness = match &verdict {
        TraceVerdict::Pass => Value::Null,
        TraceVerdict::Fail(w) => json!({
            "label": w.label,
            "shift": w.shift,
            "dim": w.dim,
            "left": w.left,
            "right": w.right,
        }),
    };
    let body = json!({
        "p": b.field.p(),
        "scope": TRACE_SCOPE,
        "traces": per_label,
        "tate_traces_equal": tate_equal,
        "isomorphic": motive_isomorphic(&b.left, &b.right)?,
        "verdict": verdict_word(verdict.is_pass()),
        "witness": witness,
    });
    Ok((body, verdict.is_pass()))
}

pub fn validate(text: &str, dir: &Path, prime: Option<u32>) -> Result<Value> {
    let raw: Value = json::parse(text)?;
    let obj = raw
        .as_object()
        .ok_or_else(|| Error::Schema("top level is not an object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    if has("left") && has("right") {
        if obj["left"].is_array() {
            let b = json::parse::<TraceBundleJson>(text)?.build(prime, dir)?;
            let ctx = b.catalog.context();
            return Ok(json!({
                "kind": "trace-bundle",
                "labels": ctx.labels().collect::<Vec<_>>(),
                "varieties": b.catalog.labels().collect::<Vec<_>>(),
                "warnings": ctx.p_prime_warnings(b.field.p()),
            }));
        }
        let b = json::parse::<TitsBundleJson>(text)?.build(dir)?;
        let mut warnings = b.left.diagram().warnings();
        warnings.extend(b.right.diagram().warnings());
        if let Some(p) = prime {
            warnings.extend(b.left.context().p_prime_warnings(p));
        }
        return Ok(json!({
            "kind": "tits-bundle",
            "labels": b.left.context().labels().collect::<Vec<_>>(),
            "vertices": b.left.diagram().labels(),
            "warnings": warnings,
        }));
    }
    if has("dim") || has("action") {
        let m = json::parse::<ModuleJson>(text)?.build(None, prime, dir)?;
        return Ok(json!({
            "kind": "module",
            "p": m.prime(),
            "group_order": m.group().order(),
            "dim": m.dim(),
            "warnings": Vec::<String>::new(),
        }));
    }
    if has("group") {
        let ctx = json::parse::<ContextJson>(text)?.build(dir)?;
        let orders: BTreeMap<&str, usize> = ctx
            .labels()
            .map(|k| (k, ctx.subgroup(k).expect("label").order()))
            .collect();
        return Ok(json!({
            "kind": "context",
            "labels": ctx.labels().collect::<Vec<_>>(),
            "subgroup_orders": orders,
            "warnings": prime.map(|p| ctx.p_prime_warnings(p)).unwrap_or_default(),
        }));
    }
    if has("degree") {
        let g = json::parse::<GroupJson>(text)?.build()?;
        return Ok(json!({
            "kind": "group",
            "degree": g.degree(),
            "order": g.order(),
            "warnings": Vec::<String>::new(),
        }));
    }
    Err(Error::Schema("unrecognized document".into()))
}
