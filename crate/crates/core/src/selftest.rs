//! A seeded end-to-end run of the main checks with a structured report.
//!
//! The report contains no timings and no hash-ordered data, so equal seeds
//! give byte-identical output.

use serde::{Deserialize, Serialize};

use crate::amalgam::AmalgamPresentation;
use crate::batch;
use crate::classify::{
    classify_subgroup, example_group, example_tuple, verify_classification, verify_example_group, ClassifyConfig,
};
use crate::nielsen::{reduce_tuple, replay, verify_case2, Outcome, ReductionConfig, ReductionOutcome};
use crate::ordering::{compare_halves, HalfWord};
use crate::random::{insert_relators, random_group_word, random_raw_word, random_tuple, rng};
use crate::text::{format_document, format_presentation, parse_document, parse_presentation, Document};

pub const SCHEMA: &str = "amalgam-selftest/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// First few failure descriptions.
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub schema: String,
    pub seed: u64,
    pub sections: Vec<Section>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.failures == 0)
    }
}

fn section(name: &str, results: Vec<Option<String>>) -> Section {
    let failures: Vec<String> = results.iter().flatten().cloned().collect();
    Section {
        name: name.into(),
        cases: results.len(),
        failures: failures.len(),
        details: failures.into_iter().take(3).collect(),
    }
}

fn soundness(g: &AmalgamPresentation, seed: u64, n: usize) -> Vec<Option<String>> {
    batch::map(&batch::indices(n), |_, &i| {
        let mut r = rng(seed, i);
        let raw = random_raw_word(g, 8, &mut r);
        let noisy = insert_relators(g, &raw, 3, &mut r);
        let a = g.reduced_form(&g.word_from_raw(&raw).ok()?);
        let b = g.reduced_form(&g.word_from_raw(&noisy).ok()?);
        (a != b).then(|| format!("case {i}: {a} vs {b}"))
    })
}

fn snf_shape(g: &AmalgamPresentation, seed: u64, n: usize) -> Vec<Option<String>> {
    batch::map(&batch::indices(n), |_, &i| {
        let mut r = rng(seed, i);
        let w = random_group_word(g, 8, &mut r);
        let snf = g.symmetric_form(&w);
        g.check_symmetric_shape(&snf)
            .err()
            .or_else(|| (!g.equal(&g.symmetric_to_word(&snf), &w)).then(|| "does not rebuild".into()))
            .map(|e| format!("{w}: {e}"))
    })
}

fn nielsen(g: &AmalgamPresentation, seed: u64, n: usize) -> Vec<Option<String>> {
    let config = ReductionConfig::default();
    batch::map(&batch::indices(n), |_, &i| {
        let mut r = rng(seed, i);
        let t = random_tuple(g, 4, 6, &mut r);
        let out = match reduce_tuple(g, &t, &config) {
            Ok(out) => out,
            Err(e) => return Some(format!("case {i}: {e}")),
        };
        check_outcome(g, &t, &out, &mut r).map(|e| format!("case {i}: {e}"))
    })
}

/// Re-verifies a reduction certificate.
pub fn check_outcome<R: rand::Rng + ?Sized>(
    g: &AmalgamPresentation,
    t: &crate::nielsen::GeneratingTuple,
    out: &ReductionOutcome,
    rng: &mut R,
) -> Option<String> {
    match replay(g, t, &out.moves) {
        Ok(r) if r == out.final_tuple => {}
        _ => return Some("move log does not replay".into()),
    }
    match &out.outcome {
        Outcome::TrivialElement { index } => {
            (!g.is_identity(&out.final_tuple.elements[*index])).then(|| "identity slot is not trivial".into())
        }
        Outcome::FactorPinch(c) => {
            let members_ok = c.indices.iter().all(|&i| {
                g.conjugate_in_factor(c.side, &c.conjugator, &out.final_tuple.elements[i])
                    .is_some()
            });
            let y = out.final_tuple.evaluate(g, &c.product);
            let product_ok =
                c.power != 0 && g.equal(&g.conjugate(&c.product_conjugator, &y), &g.amalgam_power(c.power));
            (!(members_ok && product_ok)).then(|| "pinch certificate does not verify".into())
        }
        Outcome::FreeStyle => {
            let report = verify_case2(g, &out.final_tuple, 200, rng);
            (!report.passed()).then(|| format!("case-2 violation {:?}", report.violations[0].word))
        }
    }
}

fn ordering(g: &AmalgamPresentation, seed: u64, n: usize) -> Vec<Option<String>> {
    batch::map(&batch::indices(n), |_, &i| {
        let mut r = rng(seed, i);
        let halves: Vec<HalfWord> = (0..3)
            .map(|_| HalfWord::leading(g.symmetric_form(&random_group_word(g, 6, &mut r)).leading))
            .collect();
        let c = |a: &HalfWord, b: &HalfWord| compare_halves(g, a, b).expect("same orientation");
        let (x, y, z) = (&halves[0], &halves[1], &halves[2]);
        if c(x, y) != c(y, x).reverse() {
            return Some(format!("case {i}: antisymmetry"));
        }
        if c(x, y).is_le() && c(y, z).is_le() && !c(x, z).is_le() {
            return Some(format!("case {i}: transitivity"));
        }
        None
    })
}

fn classification(seed: u64) -> Vec<Option<String>> {
    let g = example_group();
    let x = example_tuple(&g);
    let config = ClassifyConfig {
        seed,
        ..ClassifyConfig::default()
    };
    let mut subsets = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            subsets.push(vec![a, b]);
        }
    }
    for skip in (0..4).rev() {
        subsets.push((0..4).filter(|&i| i != skip).collect());
    }
    batch::map(&subsets, |_, s| {
        let t = crate::nielsen::GeneratingTuple::new(s.iter().map(|&i| x.elements[i].clone()).collect());
        let name = s.iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join(",");
        match classify_subgroup(&g, &t, &config) {
            Ok(c) if c.is_free_product() => verify_classification(&g, &t, &c, &config)
                .err()
                .map(|e| format!("<{name}>: {e}")),
            Ok(c) => Some(format!("<{name}>: {:?}", c.terminal())),
            Err(e) => Some(format!("<{name}>: {e}")),
        }
    })
}

fn round_trip(seed: u64) -> Vec<Option<String>> {
    let g = example_group();
    let mut r = rng(seed, 0);
    let mut out = Vec::new();
    out.push(
        (parse_presentation(&format_presentation(&g)).ok() != Some(g.clone())).then(|| "presentation text".into()),
    );
    let doc = Document {
        presentation: g.clone(),
        tuples: (0..5).map(|_| random_tuple(&g, 4, 5, &mut r)).collect(),
    };
    out.push((parse_document(&format_document(&doc), None).ok() != Some(doc.clone())).then(|| "document text".into()));
    for t in &doc.tuples {
        let Ok(red) = reduce_tuple(&g, t, &ReductionConfig::default()) else {
            out.push(Some("reduction failed".into()));
            continue;
        };
        let json = serde_json::to_string(&red).expect("serializable");
        let back: Option<ReductionOutcome> = serde_json::from_str(&json).ok();
        out.push((back.as_ref() != Some(&red)).then(|| "reduction record".into()));
    }
    let c = classify_subgroup(&g, &example_tuple(&g), &ClassifyConfig::default());
    if let Ok(c) = c {
        let json = serde_json::to_string(&c).expect("serializable");
        let back: Option<crate::classify::Classification> = serde_json::from_str(&json).ok();
        out.push((back.as_ref() != Some(&c)).then(|| "classification record".into()));
    }
    out
}

/// Runs all sections on the example group with the given seed.
pub fn run(seed: u64) -> SelftestReport {
    let g = example_group();
    let example = match verify_example_group() {
        Ok(rep) => rep
            .identities
            .iter()
            .map(|c| (!c.holds).then(|| c.label.clone()))
            .collect(),
        Err(e) => vec![Some(e.to_string())],
    };
    SelftestReport {
        schema: SCHEMA.into(),
        seed,
        sections: vec![
            section("normal-form-soundness", soundness(&g, seed, 200)),
            section("snf-shape", snf_shape(&g, seed ^ 1, 200)),
            section("worked-example", example),
            section("low-rank-classification", classification(seed)),
            section("nielsen-certificates", nielsen(&g, seed ^ 2, 50)),
            section("ordering-laws", ordering(&g, seed ^ 3, 1000)),
            section("round-trip", round_trip(seed)),
        ],
    }
}
