//! The verification harness: every named construction of the toolkit as a
//! reproducible check, runnable concurrently with a deterministic report.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::exact::glfq;
use crate::exact::lattice::{self, LatticeMap, SignedPerm};
use crate::exact::sl2z::{self, GenId};
use crate::exact::so4;
use crate::exact::transvection;
use crate::geo::circumcenter::{self, PointMap};
use crate::geo::h3;
use crate::geo::mobius;
use crate::geo::point::{self, Space};
use crate::geo::rigid::{self, RigidMotion};
use crate::geo::sphere;
use crate::perm::{self, FiniteGroup, Permutation, VerdictKind};
use crate::tree::{self, GraphIsometry, Tree};

/// Published default seed for every randomized property.
pub const DEFAULT_SEED: u64 = 0x0f1c5a7e;

/// Everything that determines a run; identical manifests produce
/// byte-identical reports.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: u64,
    pub tolerance: f64,
    pub cap: usize,
    pub word_len: usize,
}

impl Default for RunManifest {
    fn default() -> Self {
        RunManifest {
            command: "verify-paper".to_string(),
            arguments: Vec::new(),
            seed: DEFAULT_SEED,
            tolerance: 1e-9,
            cap: 10_000,
            word_len: 6,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// One check outcome. The elapsed time is kept out of the serialized record
/// so reports stay byte-identical across runs of the same manifest.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: CheckStatus,
    pub details: serde_json::Value,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

type CheckFn = Box<dyn Fn(&RunManifest) -> Result<serde_json::Value, String> + Send + Sync>;

fn rng_for(manifest: &RunManifest, check_id: &str) -> ChaCha8Rng {
    // Derive a per-check stream from the manifest seed and the id bytes.
    let mut h: u64 = manifest.seed;
    for b in check_id.bytes() {
        h = h.wrapping_mul(0x100000001b3).wrapping_add(b as u64);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// Runs every registered check, in parallel, and returns the results sorted
/// by check id. A check failing its assertions yields a FAIL entry with the
/// message; a cap violation yields SKIPPED.
pub fn run_all_checks(manifest: &RunManifest) -> Vec<CheckResult> {
    let checks = all_checks();
    let mut results: Vec<CheckResult> = checks
        .into_par_iter()
        .map(|(id, f)| {
            let start = std::time::Instant::now();
            let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f(manifest)));
            let elapsed_ms = start.elapsed().as_millis();
            let (status, details) = match outcome {
                Ok(Ok(details)) => (CheckStatus::Pass, details),
                Ok(Err(msg)) => {
                    if msg.contains("cap") || msg.contains("CAP") {
                        (CheckStatus::Skipped, json!({ "reason": msg }))
                    } else {
                        (CheckStatus::Fail, json!({ "counterexample": msg }))
                    }
                }
                Err(panic) => {
                    let msg = panic
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "panic".to_string());
                    (CheckStatus::Fail, json!({ "counterexample": msg }))
                }
            };
            CheckResult {
                check_id: id,
                status,
                details,
                elapsed_ms,
            }
        })
        .collect();
    results.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    results
}

/// Line-delimited JSON report plus a summary object.
pub fn render_report(results: &[CheckResult]) -> String {
    let mut out = String::new();
    let mut pass = 0;
    let mut fail = 0;
    let mut skipped = 0;
    for r in results {
        out.push_str(&serde_json::to_string(r).expect("serializable record"));
        out.push('\n');
        match r.status {
            CheckStatus::Pass => pass += 1,
            CheckStatus::Fail => fail += 1,
            CheckStatus::Skipped => skipped += 1,
        }
    }
    let summary = json!({
        "summary": { "total": results.len(), "pass": pass, "fail": fail, "skipped": skipped }
    });
    out.push_str(&summary.to_string());
    out.push('\n');
    out
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn all_checks() -> Vec<(String, CheckFn)> {
    let mut v: Vec<(String, CheckFn)> = Vec::new();
    let mut add = |id: &str, f: CheckFn| v.push((id.to_string(), f));

    add("perm.sn-fixating-iff-n-le-4", Box::new(check_sn_fixating));
    add("perm.an-fixating-iff-n-le-4", Box::new(check_an_fixating));
    add("perm.a7-witnesses", Box::new(check_a7_witnesses));
    add("perm.subgroup-counts", Box::new(check_subgroup_counts));
    add("perm.commuting-fixed-sets", Box::new(check_commuting_fixed_sets));
    add("perm.induced-action", Box::new(check_induced_action));
    add("glfq.verdicts", Box::new(check_gl_verdicts));
    add("sl2z.alpha-sequence", Box::new(check_alpha_sequence));
    add("sl2z.power-combination", Box::new(check_power_combination));
    add("sl2z.word-traces", Box::new(check_word_traces));
    add("sl2z.product-order", Box::new(check_product_order));
    add("sl2z.free-affine-audit", Box::new(check_free_affine));
    add("so4.symbolic-words", Box::new(check_so4_words));
    add("lattice.zn-construction", Box::new(check_zn_construction));
    add("lattice.hypercube", Box::new(check_hypercube));
    add("transvection.lines", Box::new(check_transvection));
    add("sphere.klein-witnesses", Box::new(check_klein));
    add("sphere.g0-subgroup-table", Box::new(check_g0_table));
    add("sphere.projective-blocks", Box::new(check_projective_blocks));
    add("hyperbolic.median-inequality", Box::new(check_median_inequality));
    add("hyperbolic.midpoint-bisection", Box::new(check_midpoint_bisection));
    add("hyperbolic.commutator-trace", Box::new(check_commutator_trace));
    add("hyperbolic.projection", Box::new(check_projection));
    add("hyperbolic.classify", Box::new(check_classification));
    add("circumcenter.euclidean", Box::new(check_euclidean_circumcenter));
    add("circumcenter.hyperbolic", Box::new(check_hyperbolic_circumcenter));
    add("circumcenter.invariant-set", Box::new(check_invariant_set));
    add("witness.r3-parallel-axes", Box::new(check_r3_witness));
    add("witness.h3-candidates", Box::new(check_h3_witness));
    add("witness.mobius-boundary", Box::new(check_mobius_words));
    add("abelian.commuting-solver", Box::new(check_abelian_solver));
    add("abelian.cyclic-quotient", Box::new(check_cyclic_quotient));
    add("tree.global-fixed-points", Box::new(check_tree_fixed_points));
    add("tree.three-element-criterion", Box::new(check_three_criterion));
    add("tree.center-invariance", Box::new(check_tree_center));
    add("tree.bounded-orbit", Box::new(check_bounded_orbit));
    add("colored.global-fixed-points", Box::new(check_colored_fixed_points));
    add("colored.cell-too-large", Box::new(check_cell_too_large));
    v
}

// ---------------------------------------------------------------------------
// Permutation checks
// ---------------------------------------------------------------------------

fn check_sn_fixating(m: &RunManifest) -> Result<serde_json::Value, String> {
    // n ≤ 4 by full subgroup enumeration.
    for n in 1..=4usize {
        let (fixating, _) = perm::is_fixating(&FiniteGroup::symmetric(n), m.cap)
            .map_err(|e| e.to_string())?;
        ensure!(fixating, "S_{n} should be fixating");
    }
    // n = 5..9: explicit eccentric witnesses inside S_n.
    let mut witness_orders = Vec::new();
    for n in 5..=9usize {
        let (f, g) = sn_witness_generators(n);
        let h = perm::generate_group(&[f, g], m.cap).map_err(|e| e.to_string())?;
        let verdict = perm::classify_action(&h);
        ensure!(
            verdict.kind == VerdictKind::Eccentric,
            "S_{n} witness not eccentric: {:?}",
            verdict.kind
        );
        witness_orders.push(h.order());
    }
    Ok(json!({ "fixating_up_to": 4, "witness_orders": witness_orders }))
}

/// The step-by-step witnesses: orders 6, 4 and the doubled constructions.
fn sn_witness_generators(n: usize) -> (Permutation, Permutation) {
    match n {
        5 => (perm::perm("(123)", 5), perm::perm("(12)(45)", 5)),
        6 => (perm::perm("(12)(34)", 6), perm::perm("(12)(56)", 6)),
        _ => {
            let tail: Vec<String> = (6..=n).map(|v| v.to_string()).collect();
            let tail = tail.join(" ");
            (
                perm::perm(&format!("(123)({tail})"), n),
                perm::perm(&format!("(12)(45)({tail})"), n),
            )
        }
    }
}

fn an_witness_generators(n: usize) -> (Permutation, Permutation) {
    match n {
        5 => (perm::perm("(123)", 5), perm::perm("(12)(45)", 5)),
        6 => (perm::perm("(12)(34)", 6), perm::perm("(12)(56)", 6)),
        7 => (perm::perm("(12)(34)", 7), perm::perm("(123)(567)", 7)),
        8 => (perm::perm("(123)(678)", 8), perm::perm("(12)(45)(678)", 8)),
        _ => {
            let tail: Vec<String> = (7..=n).map(|v| v.to_string()).collect();
            let tail = tail.join(" ");
            (
                perm::perm(&format!("(12)(34)({tail})"), n),
                perm::perm(&format!("(12)(56)({tail})"), n),
            )
        }
    }
}

fn is_even(p: &Permutation) -> bool {
    let transpositions: usize = p.cycles().iter().map(|c| c.len() - 1).sum();
    transpositions % 2 == 0
}

fn check_an_fixating(m: &RunManifest) -> Result<serde_json::Value, String> {
    for n in 1..=4usize {
        let (fixating, _) = perm::is_fixating(&FiniteGroup::alternating(n.max(1)), m.cap)
            .map_err(|e| e.to_string())?;
        ensure!(fixating, "A_{n} should be fixating");
    }
    let mut witness_orders = Vec::new();
    for n in 5..=9usize {
        let (f, g) = an_witness_generators(n);
        ensure!(
            is_even(&f) && is_even(&g),
            "A_{n} witness generators must be even permutations"
        );
        let h = perm::generate_group(&[f, g], m.cap).map_err(|e| e.to_string())?;
        let verdict = perm::classify_action(&h);
        ensure!(
            verdict.kind == VerdictKind::Eccentric,
            "A_{n} witness not eccentric"
        );
        witness_orders.push(h.order());
    }
    Ok(json!({ "fixating_up_to": 4, "witness_orders": witness_orders }))
}

fn check_a7_witnesses(m: &RunManifest) -> Result<serde_json::Value, String> {
    // Exercise-style witnesses: the 12-element semidirect product and the
    // 24-element linear-group image, both inside A7.
    let w12 = perm::generate_group(
        &[perm::perm("(12)(34)", 7), perm::perm("(123)(567)", 7)],
        m.cap,
    )
    .map_err(|e| e.to_string())?;
    ensure!(w12.order() == 12, "first witness should have order 12");
    ensure!(
        perm::classify_action(&w12).kind == VerdictKind::Eccentric,
        "order-12 witness not eccentric"
    );
    let w24 = perm::generate_group(
        &[perm::perm("(123)(567)", 7), perm::perm("(14)(67)", 7)],
        m.cap,
    )
    .map_err(|e| e.to_string())?;
    ensure!(w24.order() == 24, "second witness should have order 24");
    ensure!(
        perm::classify_action(&w24).kind == VerdictKind::Eccentric,
        "order-24 witness not eccentric"
    );
    for w in [&w12, &w24] {
        ensure!(
            w.elements().iter().all(is_even),
            "witness not inside the alternating group"
        );
    }
    Ok(json!({ "orders": [12, 24] }))
}

fn check_subgroup_counts(m: &RunManifest) -> Result<serde_json::Value, String> {
    let s3 = perm::enumerate_subgroups(&FiniteGroup::symmetric(3), m.cap)
        .map_err(|e| e.to_string())?;
    ensure!(s3.len() == 6, "S3 has 6 subgroups, found {}", s3.len());
    let s4 = perm::enumerate_subgroups(&FiniteGroup::symmetric(4), m.cap)
        .map_err(|e| e.to_string())?;
    ensure!(s4.len() == 30, "S4 has 30 subgroups, found {}", s4.len());
    Ok(json!({ "s3": s3.len(), "s4": s4.len() }))
}

fn check_commuting_fixed_sets(_m: &RunManifest) -> Result<serde_json::Value, String> {
    let group = FiniteGroup::symmetric(5);
    let mut pairs = 0usize;
    for f in group.elements() {
        for g in group.elements() {
            if !f.commutes_with(g) {
                continue;
            }
            pairs += 1;
            let fix = f.fixed_points();
            let image: BTreeSet<usize> = fix.iter().map(|&x| g.apply(x)).collect();
            ensure!(image == fix, "g(Fix f) != Fix f for f={f:?} g={g:?}");
        }
    }
    Ok(json!({ "commuting_pairs": pairs }))
}

fn check_induced_action(m: &RunManifest) -> Result<serde_json::Value, String> {
    let s5 = FiniteGroup::symmetric(5);
    let reps = vec![
        perm::perm("(15)", 5),
        perm::perm("(25)", 5),
        perm::perm("(35)", 5),
        perm::perm("(45)", 5),
        perm::perm("", 5),
    ];
    let act = perm::InducedAction::new(s5, 5, reps).map_err(|e| e.to_string())?;
    ensure!(
        act.fixed_pairs(&perm::perm("(12)(45)", 5)) == vec![(3, 5)],
        "Fix of induced (12)(45) wrong"
    );
    ensure!(
        act.fixed_pairs(&perm::perm("(123)", 5)) == vec![(4, 4), (4, 5), (5, 4), (5, 5)],
        "Fix of induced (123) wrong"
    );
    let induced_k = perm::generate_group(
        &[
            act.induce(&perm::perm("(123)", 5)),
            act.induce(&perm::perm("(12)(45)", 5)),
        ],
        m.cap,
    )
    .map_err(|e| e.to_string())?;
    ensure!(
        perm::classify_action(&induced_k).kind == VerdictKind::Eccentric,
        "induced action of the order-6 group should be eccentric"
    );
    Ok(json!({ "induced_order": induced_k.order() }))
}

// ---------------------------------------------------------------------------
// Linear groups over finite fields
// ---------------------------------------------------------------------------

fn check_gl_verdicts(m: &RunManifest) -> Result<serde_json::Value, String> {
    // GL(1,q) fixating for every prime power q ≤ 16.
    for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let g = glfq::gl_full_group(1, q, m.cap).map_err(|e| e.to_string())?;
        let (fixating, _) = perm::is_fixating(&g, m.cap).map_err(|e| e.to_string())?;
        ensure!(fixating, "GL(1,{q}) should be fixating");
    }
    // GL(2,2) ≅ S3 fixating.
    let g22 = glfq::gl_full_group(2, 2, m.cap).map_err(|e| e.to_string())?;
    ensure!(g22.order() == 6, "|GL(2,2)| = 6");
    let (fixating, _) = perm::is_fixating(&g22, m.cap).map_err(|e| e.to_string())?;
    ensure!(fixating, "GL(2,2) should be fixating");
    // GL(2,3) eccentric through the triangular family.
    let field3 = crate::exact::fq::FqField::new(3).map_err(|e| e.to_string())?;
    let a = glfq::FqMatrix::from_rows(&[vec![2, 0], vec![0, 1]], &field3);
    let b = glfq::FqMatrix::from_rows(&[vec![1, 1], vec![0, 1]], &field3);
    let w23 = glfq::gl_to_permutation_group(2, 3, &[a, b], m.cap).map_err(|e| e.to_string())?;
    ensure!(
        perm::classify_action(&w23).kind == VerdictKind::Eccentric,
        "GL(2,3) family witness should be eccentric"
    );
    let g23 = glfq::gl_full_group(2, 3, m.cap).map_err(|e| e.to_string())?;
    let (fixating, witness) = perm::is_fixating(&g23, m.cap).map_err(|e| e.to_string())?;
    ensure!(!fixating, "GL(2,3) should not be fixating");
    let w23_order = witness.map(|w| w.order());
    // GL(3,2) eccentric through the order-24 witness.
    let field2 = crate::exact::fq::FqField::new(2).map_err(|e| e.to_string())?;
    let f = glfq::FqMatrix::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]], &field2);
    let g = glfq::FqMatrix::from_rows(&[vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]], &field2);
    let w32 = glfq::gl_to_permutation_group(3, 2, &[f, g], m.cap).map_err(|e| e.to_string())?;
    ensure!(w32.order() == 24, "e16 witness has order 24");
    ensure!(
        perm::classify_action(&w32).kind == VerdictKind::Eccentric,
        "GL(3,2) witness should be eccentric"
    );
    let g32 = glfq::gl_full_group(3, 2, m.cap).map_err(|e| e.to_string())?;
    ensure!(g32.order() == 168, "|GL(3,2)| = 168");
    Ok(json!({ "gl23_minimal_witness_order": w23_order }))
}

// ---------------------------------------------------------------------------
// SL(2,Z) and SO4 certificates
// ---------------------------------------------------------------------------

fn check_alpha_sequence(_m: &RunManifest) -> Result<serde_json::Value, String> {
    let seq = sl2z::TraceSequence::up_to(65);
    for n in 0..=64usize {
        let low = (BigInt::one() << n) - 1;
        ensure!(seq.alpha(n) >= &low, "alpha_{n} >= 2^{n}-1 fails");
        let gap = seq.alpha(n + 1) - seq.alpha(n);
        ensure!(gap >= (BigInt::one() << n), "alpha gap fails at {n}");
    }
    for (mat, name) in [(sl2z::gen_a(), "A"), (sl2z::gen_b(), "B")] {
        for n in 1..=8usize {
            sl2z::trace_certificate(&mat, n)
                .map_err(|e| format!("certificate {name}^{n}: {e}"))?;
        }
    }
    Ok(json!({ "verified_to": 64 }))
}

fn check_power_combination(_m: &RunManifest) -> Result<serde_json::Value, String> {
    let seq = sl2z::TraceSequence::up_to(20);
    for mat in [
        sl2z::gen_a(),
        sl2z::gen_b(),
        sl2z::gen_a().inv_unimodular(),
        sl2z::gen_b().inv_unimodular(),
    ] {
        for n in 1..=20usize {
            let lhs = mat.pow(n as u32);
            let an = seq.alpha(n);
            let ap = seq.alpha(n - 1);
            let rhs = sl2z::Mat2 {
                a: an * &mat.a - ap,
                b: an * &mat.b,
                c: an * &mat.c,
                d: an * &mat.d - ap,
            };
            ensure!(lhs == rhs, "M^n combination fails at n={n}");
        }
    }
    Ok(json!({ "powers_verified": 20 }))
}

fn check_word_traces(m: &RunManifest) -> Result<serde_json::Value, String> {
    // Exact |trace| ≥ 3 over every reduced block word with at most
    // `word_len` blocks and exponents in [−3, 3], in 128-bit arithmetic.
    let blocks = m.word_len.min(6);
    let count = audit_word_traces_i128(blocks, 3)?;
    // The per-word certified route on a few explicit words.
    let ab = sl2z::word_trace_bound(&[(GenId::A, 1), (GenId::B, 1)]).map_err(|e| e.to_string())?;
    ensure!(ab.trace == BigInt::from(18), "tr AB = 18");
    let aibi =
        sl2z::word_trace_bound(&[(GenId::A, -1), (GenId::B, -1)]).map_err(|e| e.to_string())?;
    ensure!(aibi.trace == BigInt::from(18), "tr A^-1B^-1 = 18");
    Ok(json!({ "words_checked": count, "max_blocks": blocks, "max_exponent": 3 }))
}

/// DFS over reduced block words carrying the partial product in i128.
fn audit_word_traces_i128(max_blocks: usize, max_exp: i64) -> Result<usize, String> {
    type M = [[i128; 2]; 2];
    const ID: M = [[1, 0], [0, 1]];
    fn mul(a: &M, b: &M) -> M {
        let mut out = [[0i128; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0]
                    .checked_mul(b[0][j])
                    .and_then(|x| a[i][1].checked_mul(b[1][j]).and_then(|y| x.checked_add(y)))
                    .expect("i128 overflow in word audit");
            }
        }
        out
    }
    let a: M = [[0, 1], [-1, 3]];
    let ai: M = [[3, -1], [1, 0]];
    let b: M = [[-1, -1], [5, 4]];
    let bi: M = [[4, 1], [-5, -1]];
    let letter = |gen: GenId, e: i64| -> M {
        let base = match (gen, e >= 0) {
            (GenId::A, true) => a,
            (GenId::A, false) => ai,
            (GenId::B, true) => b,
            (GenId::B, false) => bi,
        };
        let mut acc = ID;
        for _ in 0..e.unsigned_abs() {
            acc = mul(&acc, &base);
        }
        acc
    };
    let mut count = 0usize;
    let mut violations: Vec<String> = Vec::new();
    let exps: Vec<i64> = (-max_exp..=max_exp).filter(|&e| e != 0).collect();
    // Stack of (prefix product, next generator, depth).
    let mut stack: Vec<(M, GenId, usize)> =
        vec![(ID, GenId::A, 0), (ID, GenId::B, 0)];
    while let Some((prefix, gen, depth)) = stack.pop() {
        for &e in &exps {
            let word = mul(&prefix, &letter(gen, e));
            count += 1;
            let tr = word[0][0] + word[1][1];
            if tr.abs() < 3 {
                violations.push(format!("gen={gen:?} e={e} depth={depth} trace={tr}"));
            }
            if depth + 1 < max_blocks {
                let next = match gen {
                    GenId::A => GenId::B,
                    GenId::B => GenId::A,
                };
                stack.push((word, next, depth + 1));
            }
        }
    }
    if violations.is_empty() {
        Ok(count)
    } else {
        Err(format!("trace bound violations: {violations:?}"))
    }
}

fn check_product_order(m: &RunManifest) -> Result<serde_json::Value, String> {
    // X ≫ Y ≫ 0 and X' ≫ Y' ≫ 0 imply XX' ≫ YY' on random data.
    let mut rng = rng_for(m, "sl2z.product-order");
    for _ in 0..500 {
        let entry = |rng: &mut ChaCha8Rng| {
            let y: i64 = rng.gen_range(0..50);
            let x = y + rng.gen_range(0..50);
            (x, y)
        };
        let mut mats = Vec::new();
        for _ in 0..2 {
            let ((xa, ya), (xb, yb), (xc, yc), (xd, yd)) =
                (entry(&mut rng), entry(&mut rng), entry(&mut rng), entry(&mut rng));
            mats.push((
                sl2z::Mat2::new(xa, xb, xc, xd),
                sl2z::Mat2::new(ya, yb, yc, yd),
            ));
        }
        let (x1, y1) = &mats[0];
        let (x2, y2) = &mats[1];
        ensure!(
            x1.mul(x2).dominates(&y1.mul(y2)),
            "product order violated: {x1:?} {x2:?}"
        );
    }
    Ok(json!({ "samples": 500 }))
}

fn check_free_affine(m: &RunManifest) -> Result<serde_json::Value, String> {
    let report = sl2z::free_affine_eccentric_audit(m.word_len.min(6));
    ensure!(
        report.violations == 0,
        "free affine audit found {} violations",
        report.violations
    );
    ensure!(
        report.fix_f != report.fix_g,
        "generator fixed points must differ"
    );
    Ok(serde_json::to_value(&report).unwrap())
}

fn check_so4_words(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut count = 0usize;
    let mut failure: Option<String> = None;
    so4::for_each_alternating_word(m.word_len.min(6), |w| {
        if failure.is_some() {
            return;
        }
        match so4::so4_symbolic_audit(w) {
            Ok(cert) if cert.holds() => count += 1,
            Ok(cert) => failure = Some(format!("word {w:?}: {cert:?}")),
            Err(e) => failure = Some(format!("word {w:?}: {e}")),
        }
    });
    match failure {
        None => Ok(json!({ "words_certified": count })),
        Some(msg) => Err(msg),
    }
}

// ---------------------------------------------------------------------------
// Lattice checks
// ---------------------------------------------------------------------------

fn random_signed_perm(rng: &mut ChaCha8Rng, n: usize) -> SignedPerm {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut mat = vec![vec![0i64; n]; n];
    for (j, &i) in perm.iter().enumerate() {
        mat[i][j] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    SignedPerm::from_int_matrix(&mat).expect("constructed signed permutation")
}

/// A random GAF group of lattice isometries: generators conjugated about a
/// common integer point are always a GAG, and rejection sampling keeps the
/// mixed cases exact.
fn random_gaf_lattice_group(rng: &mut ChaCha8Rng, n: usize, cap: usize) -> Vec<LatticeMap> {
    loop {
        let k = rng.gen_range(1..=2usize);
        let common: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
        let mut gens = Vec::new();
        for _ in 0..k {
            let p = random_signed_perm(rng, n);
            // f(x) = P(x − c) + c fixes c.
            let pc = p.apply(&common);
            let t: Vec<BigInt> = common.iter().zip(pc).map(|(c, v)| c - v).collect();
            gens.push(LatticeMap::new(p, t));
        }
        if rng.gen_bool(0.3) {
            // Mix in an extra generator fixing a different point; keep the
            // group only if it stays a finite GAF.
            let other: Vec<BigInt> =
                (0..n).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
            let p = random_signed_perm(rng, n);
            let pc = p.apply(&other);
            let t: Vec<BigInt> = other.iter().zip(pc).map(|(c, v)| c - v).collect();
            gens.push(LatticeMap::new(p, t));
        }
        match lattice::close_lattice_group(&gens, cap) {
            Ok(elements)
                if elements
                    .iter()
                    .all(|f| f.fixed_lattice_point().is_some()) =>
            {
                return gens;
            }
            _ => continue,
        }
    }
}

fn check_zn_construction(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut rng = rng_for(m, "lattice.zn-construction");
    let mut verified = 0usize;
    let mut brute_checked = 0usize;
    for n in 1..=6usize {
        for _ in 0..100 {
            let gens = random_gaf_lattice_group(&mut rng, n, 4096);
            let point = lattice::zn_global_fixed_point(&gens, 4096)
                .map_err(|e| format!("dim {n}: {e}"))?;
            let elements =
                lattice::close_lattice_group(&gens, 4096).map_err(|e| e.to_string())?;
            for f in &elements {
                ensure!(f.apply(&point) == point, "output not fixed in dim {n}");
            }
            verified += 1;
            if n <= 3 {
                // Brute-force box agreement.
                let bound = 6i64;
                let inside = point
                    .iter()
                    .all(|c| c >= &BigInt::from(-bound) && c <= &BigInt::from(bound));
                let mut any = false;
                let mut contains_output = false;
                let mut idx = vec![-bound; n];
                'boxes: loop {
                    let v: Vec<BigInt> = idx.iter().map(|&i| BigInt::from(i)).collect();
                    if elements.iter().all(|f| f.apply(&v) == v) {
                        any = true;
                        if v == point {
                            contains_output = true;
                        }
                    }
                    // Advance the odometer.
                    for d in 0..n {
                        idx[d] += 1;
                        if idx[d] <= bound {
                            continue 'boxes;
                        }
                        idx[d] = -bound;
                    }
                    break;
                }
                if inside {
                    ensure!(
                        any && contains_output,
                        "box contains fixed points but not the output (dim {n})"
                    );
                }
                brute_checked += 1;
            }
        }
    }
    Ok(json!({ "groups_verified": verified, "brute_force_boxes": brute_checked }))
}

fn check_hypercube(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut orders = Vec::new();
    for n in 1..=4usize {
        let g = lattice::hypercube_group(n, 1_000_000).map_err(|e| e.to_string())?;
        let expected = (1usize << n) * (1..=n).product::<usize>();
        ensure!(
            g.order() == expected,
            "cube group order {} != {expected}",
            g.order()
        );
        orders.push(g.order());
    }
    for n in 1..=3usize {
        let fixating = lattice::hypercube_fixating(n, m.cap.max(50_000))
            .map_err(|e| e.to_string())?;
        ensure!(fixating, "cube isometry group should be fixating at n={n}");
    }
    // GAF witnesses in higher cubes: subgroups of coordinate permutations
    // (they stabilize the all-ones vertex) always admit a fixed vertex.
    let mut rng = rng_for(m, "lattice.hypercube");
    for n in 4..=6usize {
        for _ in 0..10 {
            let gens: Vec<Permutation> = (0..2)
                .map(|_| {
                    let mut coord: Vec<usize> = (0..n).collect();
                    coord.shuffle(&mut rng);
                    let verts = 1usize << n;
                    Permutation::from_images(
                        (0..verts)
                            .map(|v| {
                                let mut w = 0usize;
                                for (i, &ci) in coord.iter().enumerate() {
                                    w |= ((v >> i) & 1) << ci;
                                }
                                w + 1
                            })
                            .collect(),
                    )
                    .unwrap()
                })
                .collect();
            let sub = perm::generate_group(&gens, 1 << 16).map_err(|e| e.to_string())?;
            let v = lattice::hypercube_gaf_fixed_vertex(n, &sub).map_err(|e| e.to_string())?;
            for p in sub.elements() {
                ensure!(p.apply(v) == v, "cube witness vertex not fixed");
            }
        }
    }
    Ok(json!({ "orders": orders }))
}

fn check_transvection(_m: &RunManifest) -> Result<serde_json::Value, String> {
    let report = transvection::transvection_lines_audit(5);
    ensure!(
        report.violations == 0,
        "transvection audit found {} violations",
        report.violations
    );
    Ok(serde_json::to_value(&report).unwrap())
}

// ---------------------------------------------------------------------------
// Sphere / projective checks
// ---------------------------------------------------------------------------

fn check_klein(_m: &RunManifest) -> Result<serde_json::Value, String> {
    let entries = sphere::klein_witness_audit();
    for e in &entries {
        ensure!(e.eccentric(), "Klein witness not eccentric: {e:?}");
    }
    Ok(json!({ "ambients": entries.iter().map(|e| e.ambient.clone()).collect::<Vec<_>>() }))
}

fn check_g0_table(_m: &RunManifest) -> Result<serde_json::Value, String> {
    let t = sphere::g0_subgroup_audit();
    ensure!(
        t.total == 16 && t.gag == 11 && t.not_gaf == 5 && t.eccentric == 0,
        "G0 table wrong: {t:?}"
    );
    Ok(serde_json::to_value(&t).unwrap())
}

fn check_projective_blocks(_m: &RunManifest) -> Result<serde_json::Value, String> {
    let g5 = sphere::g5_audit();
    ensure!(g5.order == 32, "|G5| = 32, found {}", g5.order);
    ensure!(g5.eccentric(), "psi(G5) should be eccentric");
    let g3 = sphere::g3_audit();
    ensure!(g3.projective.order == 16, "|G3| = 16");
    ensure!(g3.anticommutes, "fg = -gf fails");
    ensure!(g3.squares_opposite, "f^2 = -g^2 fails");
    ensure!(g3.projective.eccentric(), "psi(G3) should be eccentric");
    let g7 = sphere::gn_audit(7);
    ensure!(g7.eccentric(), "psi(G7) should be eccentric");
    Ok(json!({ "g5_order": g5.order, "g3_order": g3.projective.order, "g7_order": g7.order }))
}

// ---------------------------------------------------------------------------
// Hyperbolic property suites
// ---------------------------------------------------------------------------

fn random_h_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..dim - 1).map(|_| rng.gen_range(-3.0..3.0)).collect();
    p.push(rng.gen_range(0.05..4.0));
    p
}

fn check_median_inequality(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut rng = rng_for(m, "hyperbolic.median-inequality");
    let mut worst = f64::INFINITY;
    for dim in [2usize, 3] {
        for _ in 0..5_000 {
            let x = random_h_point(&mut rng, dim);
            let y = random_h_point(&mut rng, dim);
            let z = random_h_point(&mut rng, dim);
            let slack = point::median_inequality_slack(Space::Hyperbolic, &x, &y, &z)
                .map_err(|e| e.to_string())?;
            worst = worst.min(slack);
            ensure!(
                slack >= -m.tolerance,
                "median inequality violated: slack {slack} at x={x:?} y={y:?} z={z:?}"
            );
        }
    }
    // Euclidean equality case.
    let s = point::median_inequality_slack(
        Space::Euclidean,
        &[0.0, 0.0],
        &[2.0, 0.0],
        &[1.0, 1.0],
    )
    .map_err(|e| e.to_string())?;
    ensure!(s.abs() < 1e-12, "parallelogram identity fails");
    Ok(json!({ "triples": 10_000, "worst_slack": worst }))
}

fn check_midpoint_bisection(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut rng = rng_for(m, "hyperbolic.midpoint-bisection");
    for dim in [2usize, 3] {
        for _ in 0..5_000 {
            let x = random_h_point(&mut rng, dim);
            let y = random_h_point(&mut rng, dim);
            let mid = point::hyperbolic_midpoint(&x, &y).map_err(|e| e.to_string())?;
            let d = point::hyperbolic_distance(&x, &y).map_err(|e| e.to_string())?;
            let dx = point::hyperbolic_distance(&x, &mid).map_err(|e| e.to_string())?;
            let dy = point::hyperbolic_distance(&y, &mid).map_err(|e| e.to_string())?;
            ensure!(
                (dx - dy).abs() <= m.tolerance && (dx - d / 2.0).abs() <= m.tolerance,
                "midpoint bisection fails: dx={dx} dy={dy} d={d}"
            );
        }
    }
    let mid = point::hyperbolic_midpoint(&[0.0, 1.0], &[0.0, 4.0]).map_err(|e| e.to_string())?;
    ensure!(
        (mid[1] - 2.0).abs() < 1e-9 && mid[0].abs() < 1e-12,
        "vertical midpoint should be (0,2)"
    );
    Ok(json!({ "pairs": 10_000 }))
}

fn check_commutator_trace(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut rng = rng_for(m, "hyperbolic.commutator-trace");
    for _ in 0..1_000 {
        let theta = rng.gen_range(0.05..std::f64::consts::TAU - 0.05);
        let x = loop {
            let v: f64 = rng.gen_range(0.1..5.0);
            if (v - 1.0).abs() > 1e-3 {
                break v;
            }
        };
        let tr = mobius::commutator_trace_h2(theta, x);
        let t = theta / 2.0;
        let closed = 2.0 * t.cos().powi(2) + (x + 1.0 / x) * t.sin().powi(2);
        ensure!(
            (tr - closed).abs() <= m.tolerance,
            "closed form mismatch: {tr} vs {closed}"
        );
        if t.sin().abs() > 1e-6 {
            ensure!(tr > 2.0, "commutator trace must exceed 2, got {tr}");
        }
    }
    ensure!(
        (mobius::commutator_trace_h2(std::f64::consts::FRAC_PI_2, 2.0) - 2.25).abs() < 1e-12,
        "worked example 2.25"
    );
    Ok(json!({ "samples": 1000 }))
}

fn check_projection(_m: &RunManifest) -> Result<serde_json::Value, String> {
    use crate::geo::point::H2Geodesic;
    let p = point::project_to_line_h2((3.0, 4.0), H2Geodesic::Vertical { foot: 0.0 });
    ensure!(
        p.0.abs() < 1e-12 && (p.1 - 5.0).abs() < 1e-12,
        "projection of 3+4i must be 5i, got {p:?}"
    );
    // Idempotence and minimality on a circle geodesic.
    let line = H2Geodesic::Circle {
        center: 1.0,
        radius: 2.0,
    };
    let x = (4.0, 1.5);
    let pr = point::project_to_line_h2(x, line);
    let pr2 = point::project_to_line_h2(pr, line);
    ensure!(
        (pr.0 - pr2.0).abs() < 1e-10 && (pr.1 - pr2.1).abs() < 1e-10,
        "projection not idempotent"
    );
    let dp = point::hyperbolic_distance(&[x.0, x.1], &[pr.0, pr.1]).map_err(|e| e.to_string())?;
    for k in 1..1000 {
        let phi = std::f64::consts::PI * k as f64 / 1000.0;
        let q = [1.0 + 2.0 * phi.cos(), 2.0 * phi.sin()];
        let dq = point::hyperbolic_distance(&[x.0, x.1], &q).map_err(|e| e.to_string())?;
        ensure!(dp <= dq + 1e-9, "projection not distance-minimizing");
    }
    Ok(json!({ "sampled_line_points": 1000 }))
}

fn check_classification(m: &RunManifest) -> Result<serde_json::Value, String> {
    use crate::geo::mobius::IsometryClass;
    let mut rng = rng_for(m, "hyperbolic.classify");
    let mut counts = [0usize; 3];
    for _ in 0..2_000 {
        let x: f64 = rng.gen_range(0.2..4.0);
        let theta: f64 = rng.gen_range(0.1..6.0);
        let m0 = mobius::rotation_about(x, theta);
        let cl = mobius::classify_h2(m0, 1e-9);
        match cl.class {
            IsometryClass::Elliptic => {
                counts[0] += 1;
                let z = cl.fixed_point.unwrap();
                let w = m0.apply(z);
                ensure!(
                    ((w.0 - z.0).powi(2) + (w.1 - z.1).powi(2)).sqrt() <= m.tolerance,
                    "elliptic fixed point not fixed"
                );
            }
            IsometryClass::Identity => counts[2] += 1,
            _ => return Err("rotation classified as non-elliptic".to_string()),
        }
    }
    // Parabolic and hyperbolic elements move every interior point.
    for (mat, expect_moving) in [
        (mobius::Sl2::new(1.0, 1.0, 0.0, 1.0).unwrap(), 0.19),
        (mobius::Sl2::new(2.0, 0.0, 0.0, 0.5).unwrap(), 0.5),
    ] {
        counts[1] += 1;
        let mut min_move = f64::INFINITY;
        for gx in -20..=20 {
            for gy in 1..=40 {
                let z = (gx as f64 * 0.25, gy as f64 * 0.1);
                let w = mat.apply(z);
                let d = point::hyperbolic_distance(&[z.0, z.1], &[w.0, w.1])
                    .map_err(|e| e.to_string())?;
                min_move = min_move.min(d);
            }
        }
        ensure!(
            min_move > expect_moving * 0.1,
            "non-elliptic element nearly fixes a grid point: {min_move}"
        );
    }
    Ok(json!({ "elliptic_samples": counts[0] }))
}

// ---------------------------------------------------------------------------
// Circumcenter checks
// ---------------------------------------------------------------------------

fn check_euclidean_circumcenter(m: &RunManifest) -> Result<serde_json::Value, String> {
    let r = circumcenter::euclidean_circumcenter(&[vec![0.0, 0.0], vec![2.0, 0.0]])
        .map_err(|e| e.to_string())?;
    ensure!(
        point::euclidean_distance(&r.center, &[1.0, 0.0]) < 1e-9 && (r.radius - 1.0).abs() < 1e-9,
        "two-point case"
    );
    let h = 3.0f64.sqrt();
    let r = circumcenter::euclidean_circumcenter(&[vec![0.0, 0.0], vec![2.0, 0.0], vec![1.0, h]])
        .map_err(|e| e.to_string())?;
    ensure!(
        point::euclidean_distance(&r.center, &[1.0, 1.0 / h]) < 1e-9
            && (r.radius - 2.0 / h).abs() < 1e-9,
        "equilateral case"
    );
    // Random sets: coverage and local minimality of the covering radius.
    let mut rng = rng_for(m, "circumcenter.euclidean");
    for _ in 0..200 {
        let dim = rng.gen_range(2..=5usize);
        let count = rng.gen_range(2..=30usize);
        let pts: Vec<Vec<f64>> = (0..count)
            .map(|_| (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect())
            .collect();
        let res = circumcenter::euclidean_circumcenter(&pts).map_err(|e| e.to_string())?;
        for p in &pts {
            ensure!(
                point::euclidean_distance(&res.center, p) <= res.radius + 1e-9,
                "point outside the ball"
            );
        }
        for trial in 0..8 {
            let dir: Vec<f64> = (0..dim)
                .map(|k| ((trial * dim + k) as f64 * 0.7).sin())
                .collect();
            let moved = point::add(&res.center, &point::scale(&dir, 1e-4));
            let r2 = circumcenter::covering_radius(Space::Euclidean, &moved, &pts)
                .map_err(|e| e.to_string())?;
            ensure!(
                r2 >= res.radius - 1e-9,
                "covering radius not locally minimal"
            );
        }
    }
    Ok(json!({ "random_sets": 200 }))
}

fn check_hyperbolic_circumcenter(m: &RunManifest) -> Result<serde_json::Value, String> {
    let r = circumcenter::hyperbolic_circumcenter(&[vec![0.0, 1.0], vec![0.0, 4.0]], 0)
        .map_err(|e| e.to_string())?;
    ensure!(
        r.center[0].abs() < 1e-6
            && (r.center[1] - 2.0).abs() < 1e-6
            && (r.radius - std::f64::consts::LN_2).abs() < 1e-6,
        "two-point hyperbolic case"
    );
    let mut rng = rng_for(m, "circumcenter.hyperbolic");
    // The thousand-point convergence case.
    let cloud: Vec<Vec<f64>> = (0..1000).map(|_| random_h_point(&mut rng, 2)).collect();
    let res = circumcenter::hyperbolic_circumcenter(&cloud, 0).map_err(|e| e.to_string())?;
    ensure!(res.residual < 1e-9, "residual {} too large", res.residual);
    for p in &cloud {
        let d = point::hyperbolic_distance(&res.center, p).map_err(|e| e.to_string())?;
        ensure!(d <= res.radius + 1e-9, "cloud point outside the ball");
    }
    // Restart agreement on smaller random sets.
    for _ in 0..50 {
        let count = rng.gen_range(2..=12usize);
        let pts: Vec<Vec<f64>> = (0..count).map(|_| random_h_point(&mut rng, 3)).collect();
        let a = circumcenter::hyperbolic_circumcenter(&pts, 0).map_err(|e| e.to_string())?;
        let b = circumcenter::hyperbolic_circumcenter(&pts, count / 2)
            .map_err(|e| e.to_string())?;
        let gap = point::hyperbolic_distance(&a.center, &b.center).map_err(|e| e.to_string())?;
        ensure!(
            gap <= 1e-6 && (a.radius - b.radius).abs() <= 1e-6,
            "restart disagreement: gap {gap}"
        );
    }
    Ok(json!({ "cloud_iterations": res.iterations, "restart_sets": 50 }))
}

fn check_invariant_set(_m: &RunManifest) -> Result<serde_json::Value, String> {
    struct Rot(f64);
    impl PointMap for Rot {
        fn apply_point(&self, x: &[f64]) -> Vec<f64> {
            let (s, c) = self.0.sin_cos();
            vec![c * x[0] - s * x[1], s * x[0] + c * x[1]]
        }
    }
    let square = vec![
        vec![1.0, 0.0],
        vec![0.0, 1.0],
        vec![-1.0, 0.0],
        vec![0.0, -1.0],
    ];
    let rot = Rot(std::f64::consts::FRAC_PI_2);
    let center =
        circumcenter::fixed_point_from_invariant_set(Space::Euclidean, &[&rot], &square, 1e-9)
            .map_err(|e| e.to_string())?;
    ensure!(point::norm(&center) < 1e-9, "square center should be 0");
    // A finite orbit of a random point under a rotation by 2π/5: the center
    // is fixed; the centroid gives an independent cross-check.
    let fifth = Rot(std::f64::consts::TAU / 5.0);
    let mut orbit = vec![vec![1.3, 0.4]];
    for _ in 0..4 {
        orbit.push(fifth.apply_point(orbit.last().unwrap()));
    }
    let center =
        circumcenter::fixed_point_from_invariant_set(Space::Euclidean, &[&fifth], &orbit, 1e-9)
            .map_err(|e| e.to_string())?;
    let centroid = orbit.iter().fold(vec![0.0, 0.0], |acc, p| point::add(&acc, p));
    let centroid = point::scale(&centroid, 1.0 / 5.0);
    ensure!(
        point::euclidean_distance(&center, &centroid) < 1e-9,
        "orbit center differs from the centroid"
    );
    Ok(json!({ "orbit_size": 5 }))
}

// ---------------------------------------------------------------------------
// Witness checks
// ---------------------------------------------------------------------------

fn check_r3_witness(_m: &RunManifest) -> Result<serde_json::Value, String> {
    use crate::geo::rigid::R3Witness;
    let f = rigid::rotation_about_axis(&[0.0; 3], &[0.0, 0.0, 1.0], std::f64::consts::FRAC_PI_2);
    let g = rigid::rotation_about_axis(
        &[1.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0],
        std::f64::consts::FRAC_PI_2,
    );
    match rigid::eccentricity_witness_r3(&f, &g, 1e-9).map_err(|e| e.to_string())? {
        R3Witness::Witness { element, .. } => {
            for (i, row) in element.rotation.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    ensure!(
                        (v - expect).abs() <= 1e-10,
                        "witness linear part not identity"
                    );
                }
            }
            ensure!(
                point::norm(&element.translation) > 1e-3,
                "witness translation too small"
            );
        }
        other => return Err(format!("expected a translation witness, got {other:?}")),
    }
    // Crossing axes give a common point.
    let h = rigid::rotation_about_axis(&[0.0; 3], &[0.0, 1.0, 0.0], 1.2);
    match rigid::eccentricity_witness_r3(&f, &h, 1e-9).map_err(|e| e.to_string())? {
        R3Witness::CommonPoint(p) => {
            ensure!(point::norm(&p) < 1e-9, "common point should be the origin")
        }
        other => return Err(format!("expected common point, got {other:?}")),
    }
    Ok(json!({ "parallel_axis_case": "translation witness" }))
}

fn check_h3_witness(_m: &RunManifest) -> Result<serde_json::Value, String> {
    use num_complex::Complex64;
    let f = h3::vertical_rotation(Complex64::new(0.0, 0.0), std::f64::consts::FRAC_PI_2);
    let g = h3::vertical_rotation(Complex64::new(1.0, 0.0), std::f64::consts::FRAC_PI_2);
    match h3::eccentricity_witness_h3(&f, &g, 1e-9).map_err(|e| e.to_string())? {
        h3::H3Witness::Witness { trace, label } => {
            let real_inside = trace.1.abs() < 1e-9 && trace.0.abs() < 2.0 - 1e-9;
            ensure!(!real_inside, "witness trace must certify no fixed point");
            Ok(json!({ "witness": label, "trace": trace }))
        }
        other => Err(format!("expected witness, got {other:?}")),
    }
}

fn check_mobius_words(m: &RunManifest) -> Result<serde_json::Value, String> {
    // Words in the boundary action of A and B always have real fixed
    // points: |trace| ≥ 3 exactly, so the discriminant is at least 5.
    let count = audit_word_traces_i128(m.word_len.min(6), 3)?;
    // Exact disjointness of the generator fixed sets: the resultant of
    // x² − 3x + 1 (fixed points of f) and 5x² + 5x + 1 (of g) is nonzero.
    let (a1, b1, c1): (i64, i64, i64) = (1, -3, 1);
    let (a2, b2, c2): (i64, i64, i64) = (5, 5, 1);
    let resultant = (a1 * c2 - a2 * c1).pow(2) - (a1 * b2 - a2 * b1) * (b1 * c2 - b2 * c1);
    ensure!(resultant != 0, "generator fixed sets would intersect");
    // Numeric cross-check of the two fixed-point pairs.
    let pf = mobius::mobius_line_fixed_points(0.0, 1.0, -1.0, 3.0, 1e-9);
    let pg = mobius::mobius_line_fixed_points(-1.0, -1.0, 5.0, 4.0, 1e-9);
    ensure!(
        matches!(pf, mobius::MobiusFixedPoints::Points(ref v) if v.len() == 2),
        "f must have two boundary fixed points"
    );
    ensure!(
        matches!(pg, mobius::MobiusFixedPoints::Points(ref v) if v.len() == 2),
        "g must have two boundary fixed points"
    );
    Ok(json!({ "words_checked": count, "resultant": resultant }))
}

// ---------------------------------------------------------------------------
// Commuting-generator checks
// ---------------------------------------------------------------------------

fn check_abelian_solver(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut rng = rng_for(m, "abelian.commuting-solver");
    for _ in 0..100 {
        // Random family of rotations about one common random axis in R³.
        let point: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let axis: Vec<f64> = loop {
            let v: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if point::norm(&v) > 0.3 {
                break v;
            }
        };
        let gens: Vec<RigidMotion> = (0..rng.gen_range(1..=3usize))
            .map(|_| rigid::rotation_about_axis(&point, &axis, rng.gen_range(0.2..5.0)))
            .collect();
        let p = rigid::abelian_gag_solver(&gens, 1e-9).map_err(|e| e.to_string())?;
        for g in &gens {
            ensure!(
                point::euclidean_distance(&g.apply(&p), &p) <= 1e-8,
                "solver output moved by a generator"
            );
        }
    }
    // Planar example with a unique fixed point.
    let (s, c) = std::f64::consts::FRAC_PI_2.sin_cos();
    let rot = vec![vec![c, -s], vec![s, c]];
    let center = [1.0, 2.0];
    let rp: Vec<f64> = (0..2).map(|i| point::dot(&rot[i], &center)).collect();
    let f = RigidMotion {
        rotation: rot,
        translation: point::sub(&center, &rp),
    };
    let p = rigid::abelian_gag_solver(&[f], 1e-9).map_err(|e| e.to_string())?;
    ensure!(
        point::euclidean_distance(&p, &center) <= 1e-8,
        "planar rotation center"
    );
    Ok(json!({ "families": 100 }))
}

fn check_cyclic_quotient(_m: &RunManifest) -> Result<serde_json::Value, String> {
    use crate::geo::rigid::AffineSubspace;
    let reflect = RigidMotion::new(
        vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, -1.0],
        ],
        vec![0.0; 3],
    )
    .map_err(|e| e.to_string())?;
    let line = AffineSubspace {
        point: vec![0.5, -1.0, 0.0],
        basis: vec![vec![1.0, 0.0, 0.0]],
    };
    let p = rigid::cyclic_quotient_gag(&reflect, &line, 1e-9).map_err(|e| e.to_string())?;
    ensure!(line.contains(&p, 1e-9), "projection not on the subspace");
    ensure!(
        point::euclidean_distance(&reflect.apply(&p), &p) <= 1e-9,
        "projection not fixed"
    );
    Ok(json!({ "ok": true }))
}

// ---------------------------------------------------------------------------
// Tree and colored-graph checks
// ---------------------------------------------------------------------------

/// Random tree with duplicated branches, so nontrivial automorphisms exist.
pub fn random_symmetric_tree(rng: &mut ChaCha8Rng, max_n: usize) -> Tree {
    let branch = rng.gen_range(2..=(max_n / 8).max(3));
    // A random branch shape as parent pointers.
    let parents: Vec<usize> = (1..branch).map(|i| rng.gen_range(0..i)).collect();
    let copies = rng.gen_range(2..=3usize);
    let extra = rng.gen_range(0..=(max_n / 4));
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next = 2usize; // vertex 1 is the root
    for _ in 0..copies {
        let base = next;
        edges.push((1, base));
        for (i, &p) in parents.iter().enumerate() {
            let child = base + i + 1;
            let parent = base + p;
            edges.push((parent, child));
            next = next.max(child);
        }
        next = base + branch;
    }
    // A few extra asymmetric vertices hanging off the root.
    for _ in 0..extra {
        edges.push((1, next));
        next += 1;
    }
    Tree::new(next - 1, &edges).expect("constructed tree")
}

/// A random automorphism fixing the root, built by permuting isomorphic
/// child subtrees (canonical-code equality).
pub fn random_root_automorphism(tree: &Tree, rng: &mut ChaCha8Rng) -> GraphIsometry {
    let n = tree.vertex_count();
    // Rooted canonical codes.
    let mut codes: Vec<String> = vec![String::new(); n + 1];
    fn code_of(tree: &Tree, v: usize, parent: usize, codes: &mut Vec<String>) {
        let mut child_codes: Vec<String> = Vec::new();
        for &w in tree.neighbors(v) {
            if w != parent {
                code_of(tree, w, v, codes);
                child_codes.push(codes[w].clone());
            }
        }
        child_codes.sort();
        codes[v] = format!("({})", child_codes.join(""));
    }
    code_of(tree, 1, 0, &mut codes);
    let mut images = vec![0usize; n + 1];
    images[1] = 1;
    fn map_subtree(
        tree: &Tree,
        v: usize,
        parent: usize,
        target: usize,
        target_parent: usize,
        codes: &[String],
        images: &mut Vec<usize>,
        rng: &mut ChaCha8Rng,
    ) {
        let mut children: Vec<usize> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w != parent)
            .collect();
        let mut target_children: Vec<usize> = tree
            .neighbors(target)
            .iter()
            .copied()
            .filter(|&w| w != target_parent)
            .collect();
        children.sort_by(|a, b| codes[*a].cmp(&codes[*b]));
        target_children.sort_by(|a, b| codes[*a].cmp(&codes[*b]));
        // Within equal-code runs of the target, shuffle.
        let mut i = 0;
        while i < target_children.len() {
            let mut j = i + 1;
            while j < target_children.len() && codes[target_children[j]] == codes[target_children[i]] {
                j += 1;
            }
            target_children[i..j].shuffle(rng);
            i = j;
        }
        for (&c, &tc) in children.iter().zip(&target_children) {
            images[c] = tc;
            map_subtree(tree, c, v, tc, target, codes, images, rng);
        }
    }
    map_subtree(tree, 1, 0, 1, 0, &codes, &mut images, rng);
    GraphIsometry::new(tree, images[1..].to_vec()).expect("automorphism by construction")
}

fn check_tree_fixed_points(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut rng = rng_for(m, "tree.global-fixed-points");
    let trials = 200usize;
    for _ in 0..trials {
        let tree = random_symmetric_tree(&mut rng, 60);
        let gens: Vec<GraphIsometry> = (0..rng.gen_range(1..=3usize))
            .map(|_| random_root_automorphism(&tree, &mut rng))
            .collect();
        let v = tree::tree_global_fixed_point(&tree, &gens).map_err(|e| e.to_string())?;
        for g in &gens {
            ensure!(g.apply(v) == v, "output vertex moved by a generator");
        }
        // Brute-forced intersection of the generator fixed sets contains v.
        let mut common: Option<BTreeSet<usize>> = None;
        for g in &gens {
            let fix = g.fixed_vertices();
            common = Some(match common {
                None => fix,
                Some(c) => c.intersection(&fix).copied().collect(),
            });
        }
        ensure!(
            common.unwrap_or_default().contains(&v),
            "vertex not in the brute-forced intersection"
        );
    }
    Ok(json!({ "trees": trials }))
}

fn check_three_criterion(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut rng = rng_for(m, "tree.three-element-criterion");
    for _ in 0..100 {
        let tree = random_symmetric_tree(&mut rng, 40);
        let f = random_root_automorphism(&tree, &mut rng);
        let g = random_root_automorphism(&tree, &mut rng);
        let v = tree::gaf_from_three(&tree, &f, &g).map_err(|e| e.to_string())?;
        ensure!(
            f.apply(v) == v && g.apply(v) == v,
            "criterion certificate not common"
        );
        let brute: BTreeSet<usize> = f
            .fixed_vertices()
            .intersection(&g.fixed_vertices())
            .copied()
            .collect();
        ensure!(brute.contains(&v), "certificate not in brute-force set");
        ensure!(
            v == *brute.iter().next().unwrap(),
            "certificate should be the smallest common vertex"
        );
    }
    Ok(json!({ "pairs": 100 }))
}

fn check_tree_center(_m: &RunManifest) -> Result<serde_json::Value, String> {
    use crate::tree::TreeCenter;
    // All trees on up to 9 vertices in a few shapes, against all
    // automorphisms.
    let mut trees = vec![Tree::path(1), Tree::path(2)];
    for n in 3..=9usize {
        trees.push(Tree::path(n));
        trees.push(Tree::star(n - 1));
    }
    trees.push(Tree::new(7, &[(1, 2), (2, 3), (3, 4), (3, 5), (2, 6), (6, 7)]).unwrap());
    trees.push(Tree::new(12, &[
        (1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (6, 7), (1, 8), (8, 9), (9, 10), (10, 11), (1, 12),
    ]).unwrap());
    for t in &trees {
        let center = tree::finite_tree_center(t);
        for auto in t.automorphisms() {
            match center {
                TreeCenter::Vertex(v) => {
                    ensure!(auto.apply(v) == v, "vertex center moved by automorphism")
                }
                TreeCenter::Edge(a, b) => {
                    let img: BTreeSet<usize> = [auto.apply(a), auto.apply(b)].into();
                    ensure!(
                        img == BTreeSet::from([a, b]),
                        "edge center moved by automorphism"
                    );
                }
            }
        }
    }
    Ok(json!({ "trees_checked": trees.len() }))
}

fn check_bounded_orbit(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut rng = rng_for(m, "tree.bounded-orbit");
    for _ in 0..100 {
        let tree = random_symmetric_tree(&mut rng, 40);
        let gens = vec![
            random_root_automorphism(&tree, &mut rng),
            random_root_automorphism(&tree, &mut rng),
        ];
        let seed = rng.gen_range(1..=tree.vertex_count());
        let v = tree::bounded_orbit_fixed_point(&tree, &gens, seed, m.cap)
            .map_err(|e| e.to_string())?;
        for g in &gens {
            ensure!(g.apply(v) == v, "bounded-orbit vertex moved");
        }
    }
    // The inversion case.
    let two = Tree::path(2);
    let swap = GraphIsometry::new(&two, vec![2, 1]).map_err(|e| e.to_string())?;
    ensure!(
        matches!(
            tree::bounded_orbit_fixed_point(&two, &[swap], 1, 100),
            Err(tree::TreeError::InversionDetected(1, 2))
        ),
        "edge swap must be flagged as an inversion"
    );
    Ok(json!({ "orbits": 100 }))
}

/// Random tree of cells (complete graphs of 2..=4 vertices, fresh color per
/// cell) plus generators permuting leaf-cell vertices.
pub fn random_cell_tree(
    rng: &mut ChaCha8Rng,
    max_cells: usize,
) -> (usize, Vec<(usize, usize)>, Vec<usize>, Vec<Vec<usize>>) {
    let cells = rng.gen_range(2..=max_cells.max(3));
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut colors: Vec<usize> = Vec::new();
    let mut n = 1usize;
    let mut attach_points = vec![1usize];
    let mut cell_members: Vec<Vec<usize>> = Vec::new();
    for color in 0..cells {
        let size = rng.gen_range(2..=4usize);
        let at = attach_points[rng.gen_range(0..attach_points.len())];
        let mut members = vec![at];
        for _ in 1..size {
            n += 1;
            members.push(n);
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                edges.push((members[i], members[j]));
                colors.push(color);
            }
        }
        attach_points.extend(members[1..].iter().copied());
        cell_members.push(members);
    }
    (n, edges, colors, cell_members)
}

fn check_colored_fixed_points(m: &RunManifest) -> Result<serde_json::Value, String> {
    let mut rng = rng_for(m, "colored.global-fixed-points");
    let trials = 100usize;
    for _ in 0..trials {
        let (n, edges, colors, cell_members) = random_cell_tree(&mut rng, 8);
        let graph = tree::validate_colored_graph(n, &edges, &colors)
            .map_err(|e| format!("construction invalid: {e}"))?;
        // Generators: swap two non-attachment vertices inside random cells.
        let mut gens: Vec<GraphIsometry> = Vec::new();
        for _ in 0..rng.gen_range(1..=3usize) {
            let cell = &cell_members[rng.gen_range(0..cell_members.len())];
            if cell.len() >= 3 {
                let mut images: Vec<usize> = (1..=n).collect();
                let (a, b) = (cell[1], cell[2]);
                images[a - 1] = b;
                images[b - 1] = a;
                gens.push(graph.isometry(images).map_err(|e| e.to_string())?);
            } else {
                gens.push(GraphIsometry::identity(n));
            }
        }
        let v = tree::colored_global_fixed_point(&graph, &gens).map_err(|e| e.to_string())?;
        for g in &gens {
            ensure!(g.apply(v) == v, "colored fixed vertex moved");
        }
    }
    Ok(json!({ "graphs": trials }))
}

fn check_cell_too_large(_m: &RunManifest) -> Result<serde_json::Value, String> {
    // Inject a K5 cell: validation accepts it, the fixed-point algorithm
    // must refuse.
    let mut edges = Vec::new();
    for a in 1..=5usize {
        for b in a + 1..=5 {
            edges.push((a, b));
        }
    }
    edges.push((5, 6));
    let mut colors = vec![0usize; 10];
    colors.push(1);
    let graph = tree::validate_colored_graph(6, &edges, &colors).map_err(|e| e.to_string())?;
    let id = GraphIsometry::identity(6);
    match tree::colored_global_fixed_point(&graph, &[id]) {
        Err(tree::ColoredGraphError::CellTooLarge(cell)) => {
            ensure!(cell.len() == 5, "flagged cell should be the K5");
            Ok(json!({ "flagged_cell_size": cell.len() }))
        }
        other => Err(format!("expected CellTooLarge, got {other:?}")),
    }
}
