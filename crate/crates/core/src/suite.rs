//! Seeded verification suites. Each suite sweeps one family of cases,
//! produces one [`Verdict`] per case and is fully determined by its
//! [`SuiteConfig`]: case `k` draws from its own ChaCha stream, so results do
//! not depend on how cases are scheduled across threads.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::conormal::{
    big_matrix_m, conormal_fiber_flag, conormal_fiber_matrix, in_conormal_flag, in_conormal_grass,
    in_conormal_matrix, mij_indices, push_graph, push_iota, springer_grass, tangent_rank, tau_sharp,
    ConormalBoundTable, ConormalVerdict, CotangentMatrixPoint, SpringerFlagPoint, SpringerGrassPoint,
};
use crate::embedding::{check_rank_lemma, EmbeddingTarget};
use crate::equivariant::{calibrate_convention, verify_multidegree, FROZEN_CONVENTION};
use crate::exactla::{Field, Matrix, PrimeField, Subspace, DEFAULT_PRIME};
use crate::kl::{covexillary_kl_check, kl_polynomial, PolynomialQ};
use crate::permcore::{
    avoids_3412, covexillary_data, essential_set, is_covexillary, reconstruct_from_essential,
    PartialPermutation,
};
use crate::varieties::{in_matrix_schubert, sample_cell_point, ConditionSet, Flag};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    CovexEquiv,
    ElRoundtrip,
    EmbedThm,
    RankLemma,
    ConormalMatrix,
    ConormalFlag,
    ConormalGrass,
    DiagramChase,
    KlCovex,
    Multidegree,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::CovexEquiv,
        Suite::ElRoundtrip,
        Suite::EmbedThm,
        Suite::RankLemma,
        Suite::ConormalMatrix,
        Suite::ConormalFlag,
        Suite::ConormalGrass,
        Suite::DiagramChase,
        Suite::KlCovex,
        Suite::Multidegree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CovexEquiv => "covex-equiv",
            Suite::ElRoundtrip => "el-roundtrip",
            Suite::EmbedThm => "embed-thm",
            Suite::RankLemma => "rank-lemma",
            Suite::ConormalMatrix => "conormal-matrix",
            Suite::ConormalFlag => "conormal-flag",
            Suite::ConormalGrass => "conormal-grass",
            Suite::DiagramChase => "diagram-chase",
            Suite::KlCovex => "kl-covex",
            Suite::Multidegree => "multidegree",
        }
    }

    /// The acceptance criterion the suite verifies.
    pub fn criterion(self) -> u8 {
        match self {
            Suite::CovexEquiv => 1,
            Suite::ElRoundtrip => 3,
            Suite::EmbedThm => 4,
            Suite::RankLemma => 5,
            Suite::ConormalMatrix => 6,
            Suite::ConormalFlag => 7,
            Suite::ConormalGrass | Suite::DiagramChase => 8,
            Suite::KlCovex => 9,
            Suite::Multidegree => 10,
        }
    }

    pub fn default_n_max(self) -> usize {
        match self {
            Suite::CovexEquiv => 7,
            Suite::ElRoundtrip => 6,
            Suite::Multidegree => 3,
            _ => 4,
        }
    }

    /// Largest `n` the suite accepts; beyond it sweeps stop being desk-sized.
    pub fn max_n_max(self) -> usize {
        match self {
            Suite::CovexEquiv => 9,
            Suite::ElRoundtrip => 8,
            Suite::KlCovex | Suite::Multidegree => 4,
            _ => 5,
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::ElRoundtrip => 1000,
            Suite::EmbedThm => 200,
            Suite::RankLemma => 50,
            _ => 20,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: String,
    /// `None` uses the suite default.
    pub n_max: Option<usize>,
    /// Samples per case; `None` uses the suite default, zero is rejected.
    pub trials: Option<usize>,
    pub prime: u64,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(suite: &str) -> Self {
        Self { suite: suite.to_string(), n_max: None, trials: None, prime: DEFAULT_PRIME, seed: 0 }
    }

    fn resolve(&self) -> Result<Resolved> {
        let suite: Suite = self.suite.parse()?;
        let field = PrimeField::new(self.prime).map_err(|e| Error::Config(e.to_string()))?;
        let trials = self.trials.unwrap_or_else(|| suite.default_trials());
        if trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        let n_max = self.n_max.unwrap_or_else(|| suite.default_n_max());
        if n_max == 0 || n_max > suite.max_n_max() {
            return Err(Error::Config(format!("n_max for {suite} must lie in 1..={}", suite.max_n_max())));
        }
        Ok(Resolved { suite, field, trials, n_max, seed: self.seed })
    }
}

struct Resolved {
    suite: Suite,
    field: PrimeField,
    trials: usize,
    n_max: usize,
    seed: u64,
}

impl Resolved {
    fn rng(&self, case: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(case as u64);
        rng
    }
}

/// One case of a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub suite: String,
    pub n: usize,
    pub case: String,
    /// First failing sample, when the case is sampled and failed.
    pub sample: Option<usize>,
    pub pass: bool,
    pub diagnostics: Value,
}

impl Verdict {
    fn new(suite: Suite, n: usize, case: impl Into<String>, pass: bool, diagnostics: Value) -> Self {
        Self { suite: suite.name().into(), n, case: case.into(), sample: None, pass, diagnostics }
    }

    fn at(mut self, sample: Option<usize>) -> Self {
        self.sample = if self.pass { None } else { sample };
        self
    }
}

/// Runs a suite; verdicts come back sorted by `(n, case)`.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<Verdict>> {
    let r = config.resolve()?;
    let mut out = match r.suite {
        Suite::CovexEquiv => covex_equiv(&r),
        Suite::ElRoundtrip => el_roundtrip(&r)?,
        Suite::EmbedThm => per_case(&r, covexillary_partials(r.n_max), embed_thm)?,
        Suite::RankLemma => per_case(&r, rank_lemma_cases(r.n_max), rank_lemma)?,
        Suite::ConormalMatrix => per_case(&r, covexillary_partials(r.n_max), conormal_matrix)?,
        Suite::ConormalFlag => per_case(&r, covexillary_full(r.n_max), conormal_flag)?,
        Suite::ConormalGrass => per_case(&r, covexillary_partials(r.n_max), conormal_grass)?,
        Suite::DiagramChase => per_case(&r, covexillary_partials(r.n_max), diagram_chase)?,
        Suite::KlCovex => kl_covex(&r)?,
        Suite::Multidegree => multidegree(&r)?,
    };
    out.sort_by(|a, b| (a.n, &a.case, a.sample).cmp(&(b.n, &b.case, b.sample)));
    Ok(out)
}

/// One JSON object per line, newline-terminated.
pub fn to_json_lines(verdicts: &[Verdict]) -> String {
    let mut s = String::new();
    for v in verdicts {
        s.push_str(&serde_json::to_string(v).expect("verdicts serialize"));
        s.push('\n');
    }
    s
}

fn per_case<C: Sync>(
    r: &Resolved,
    cases: Vec<C>,
    run: impl Fn(&Resolved, &C, &mut ChaCha8Rng) -> Result<Verdict> + Sync,
) -> Result<Vec<Verdict>> {
    cases
        .par_iter()
        .enumerate()
        .map(|(k, c)| run(r, c, &mut r.rng(k)))
        .collect()
}

fn covexillary_partials(n_max: usize) -> Vec<PartialPermutation> {
    (1..=n_max).flat_map(PartialPermutation::all).filter(is_covexillary).collect()
}

fn covexillary_full(n_max: usize) -> Vec<PartialPermutation> {
    (1..=n_max)
        .flat_map(PartialPermutation::all_full)
        .filter(is_covexillary)
        .collect()
}

/// Uniform choice from a pool such as `PartialPermutation::all(n)`.
fn pick<'a>(pool: &'a [PartialPermutation], rng: &mut ChaCha8Rng) -> &'a PartialPermutation {
    &pool[rng.gen_range(0..pool.len())]
}

fn covex_equiv(r: &Resolved) -> Vec<Verdict> {
    (1..=r.n_max)
        .into_par_iter()
        .map(|n| {
            let mut checked = 0usize;
            let mut covex = 0usize;
            let mut mismatch = None;
            for w in PartialPermutation::all_full(n) {
                checked += 1;
                let a = covexillary_data(&w).is_ok();
                covex += a as usize;
                if a != avoids_3412(&w) && mismatch.is_none() {
                    mismatch = Some(w.to_string());
                }
            }
            let pass = mismatch.is_none();
            Verdict::new(
                Suite::CovexEquiv,
                n,
                format!("S_{n}"),
                pass,
                json!({ "checked": checked, "covexillary": covex, "first_mismatch": mismatch }),
            )
        })
        .collect()
}

fn roundtrip_failure(w: &PartialPermutation) -> Option<String> {
    match reconstruct_from_essential(w.n(), &essential_set(w)) {
        Ok(back) if &back == w => None,
        Ok(back) => Some(format!("reconstructed {back}")),
        Err(e) => Some(e.to_string()),
    }
}

fn el_roundtrip(r: &Resolved) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for n in 1..=r.n_max.min(3) {
        for w in PartialPermutation::all(n) {
            let fail = roundtrip_failure(&w);
            out.push(Verdict::new(Suite::ElRoundtrip, n, w.to_string(), fail.is_none(), json!({ "error": fail })));
        }
    }
    let random: Vec<usize> = (4..=r.n_max).collect();
    let sampled: Vec<Verdict> = random
        .par_iter()
        .map(|&n| {
            let mut rng = r.rng(n);
            let pool = PartialPermutation::all(n);
            let mut first = None;
            for k in 0..r.trials {
                let w = pick(&pool, &mut rng);
                if let Some(e) = roundtrip_failure(w) {
                    first = Some((k, w.to_string(), e));
                    break;
                }
            }
            let pass = first.is_none();
            let sample = first.as_ref().map(|f| f.0);
            Verdict::new(
                Suite::ElRoundtrip,
                n,
                format!("random S_{n}"),
                pass,
                json!({ "samples": r.trials, "failure": first.map(|f| json!({ "w": f.1, "error": f.2 })) }),
            )
            .at(sample)
        })
        .collect();
    out.extend(sampled);
    Ok(out)
}

fn embed_thm(r: &Resolved, w: &PartialPermutation, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let n = w.n();
    let target = EmbeddingTarget::of(w)?;
    let pool = PartialPermutation::all(n);
    let (mut inside, mut outside) = (0usize, 0usize);
    let mut failure = None;
    for k in 0..r.trials {
        // points of random cells exercise both sides of the equivalence
        let u = pick(&pool, rng);
        let x = sample_cell_point(&r.field, u, rng)?;
        let lhs = in_matrix_schubert(&x, w, ConditionSet::Full)?;
        let v = target.embed_point(&x)?;
        let rhs = target.violation(&v)?;
        if lhs {
            inside += 1;
        } else {
            outside += 1;
        }
        if lhs != rhs.is_none() && failure.is_none() {
            failure = Some((k, json!({ "u": u.to_string(), "matrix_side": lhs, "violated": rhs.map(|(c, d)| json!({ "t": c.t, "bound": c.bound, "dim": d })) })));
        }
    }
    let pass = failure.is_none();
    let sample = failure.as_ref().map(|f| f.0);
    Ok(Verdict::new(
        Suite::EmbedThm,
        n,
        w.to_string(),
        pass,
        json!({ "inside": inside, "outside": outside, "mismatch": failure.map(|f| f.1) }),
    )
    .at(sample))
}

fn rank_lemma_cases(n_max: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for p in 0..=n {
            for q in 0..=n {
                for rk in 0..=q.min(n - p) {
                    out.push((n, p, q, rk));
                }
            }
        }
    }
    out
}

fn rank_lemma(r: &Resolved, &(n, p, q, rk): &(usize, usize, usize, usize), rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let pool = PartialPermutation::all(n);
    let (mut both_true, mut both_false) = (0usize, 0usize);
    let mut failure = None;
    for k in 0..r.trials {
        let u = pick(&pool, rng);
        let x = sample_cell_point(&r.field, u, rng)?;
        let (a, b) = check_rank_lemma(&x, p, q, rk)?;
        match (a, b) {
            (true, true) => both_true += 1,
            (false, false) => both_false += 1,
            _ if failure.is_none() => failure = Some((k, json!({ "u": u.to_string(), "rank_side": a, "span_side": b }))),
            _ => {}
        }
    }
    let pass = failure.is_none();
    let sample = failure.as_ref().map(|f| f.0);
    Ok(Verdict::new(
        Suite::RankLemma,
        n,
        format!("p={p} q={q} r={rk}"),
        pass,
        json!({ "both_true": both_true, "both_false": both_false, "mismatch": failure.map(|f| f.1) }),
    )
    .at(sample))
}

fn verdict_json(v: &ConormalVerdict) -> Value {
    json!({ "base_violation": v.base_violation, "first_failure": v.first_failure() })
}

/// Minimum rejection frequency for uniformly random covectors.
pub const REJECTION_THRESHOLD: f64 = 0.95;
/// Random covectors drawn per case for the rejection check.
pub const REJECTION_TRIALS: usize = 200;

fn conormal_matrix(r: &Resolved, w: &PartialPermutation, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let n = w.n();
    let f = &r.field;
    let mut failure = None;
    let mut accepted = 0usize;
    let mut fiber_dim = None;
    for k in 0..r.trials {
        let x = sample_cell_point(f, w, rng)?;
        let fiber = conormal_fiber_matrix(&x, w)?;
        let expect = n * n - tangent_rank(&x)?;
        fiber_dim = Some(fiber.dim());
        if fiber.dim() != expect && failure.is_none() {
            failure = Some((k, json!({ "fiber_dim": fiber.dim(), "expected": expect })));
        }
        let mut ys = fiber.basis();
        for _ in 0..r.trials {
            ys.push(fiber.sample(rng)?);
        }
        for y in ys {
            let v = in_conormal_matrix(&CotangentMatrixPoint::new(x.clone(), y)?, w)?;
            if v.member {
                accepted += 1;
            } else if failure.is_none() {
                failure = Some((k, json!({ "rejected_fiber_point": verdict_json(&v) })));
            }
        }
    }
    let fiber_dim = fiber_dim.expect("at least one trial");
    let mut rejection = Value::Null;
    let mut rejection_ok = true;
    if fiber_dim < n * n {
        let mut rejected = 0usize;
        for _ in 0..REJECTION_TRIALS {
            let x = sample_cell_point(f, w, rng)?;
            let y = Matrix::random(f, n, n, rng)?;
            rejected += !in_conormal_matrix(&CotangentMatrixPoint::new(x, y)?, w)?.member as usize;
        }
        let freq = rejected as f64 / REJECTION_TRIALS as f64;
        rejection_ok = freq >= REJECTION_THRESHOLD;
        rejection = json!(freq);
    }
    let pass = failure.is_none() && rejection_ok;
    let sample = failure.as_ref().map(|f| f.0);
    Ok(Verdict::new(
        Suite::ConormalMatrix,
        n,
        w.to_string(),
        pass,
        json!({ "fiber_dim": fiber_dim, "accepted": accepted, "rejection": rejection, "failure": failure.map(|f| f.1) }),
    )
    .at(sample))
}

fn conormal_flag(r: &Resolved, w: &PartialPermutation, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let n = w.n();
    let f = &r.field;
    let expect = n * (n - 1) / 2 - w.length();
    let mut failure = None;
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    for k in 0..r.trials {
        let g = sample_cell_point(f, w, rng)?;
        let fiber = conormal_fiber_flag(&g, w)?;
        if fiber.dim() != expect && failure.is_none() {
            failure = Some((k, json!({ "fiber_dim": fiber.dim(), "expected": expect })));
        }
        let mut zs = fiber.basis();
        for _ in 0..r.trials {
            zs.push(fiber.sample(rng)?);
        }
        for z in zs {
            let v = in_conormal_flag(&SpringerFlagPoint::new(Flag::new(g.clone())?, z)?, w)?;
            if v.member {
                accepted += 1;
            } else if failure.is_none() {
                failure = Some((k, json!({ "rejected_fiber_point": verdict_json(&v) })));
            }
        }
        if expect < n * (n - 1) / 2 {
            // a uniformly random point of the Springer fiber over gE
            let gi = g.inverse().expect("cell points of full permutations are invertible");
            for _ in 0..REJECTION_TRIALS / r.trials.max(1) + 1 {
                let z = g.mul(&Matrix::random_strictly_upper(f, n, rng)?)?.mul(&gi)?;
                rejected += !in_conormal_flag(&SpringerFlagPoint::new(Flag::new(g.clone())?, z)?, w)?.member as usize;
            }
        }
    }
    let mut rejection = Value::Null;
    let mut rejection_ok = true;
    if expect < n * (n - 1) / 2 {
        let total = r.trials * (REJECTION_TRIALS / r.trials.max(1) + 1);
        let freq = rejected as f64 / total as f64;
        rejection_ok = freq >= REJECTION_THRESHOLD;
        rejection = json!(freq);
    }
    let pass = failure.is_none() && rejection_ok;
    let sample = failure.as_ref().map(|f| f.0);
    Ok(Verdict::new(
        Suite::ConormalFlag,
        n,
        w.to_string(),
        pass,
        json!({ "fiber_dim": expect, "accepted": accepted, "rejection": rejection, "failure": failure.map(|f| f.1) }),
    )
    .at(sample))
}

/// `(τ·Col(I; x), τ ((−yx, y), (−xyx, xy)) τ⁻¹)`.
pub fn grass_springer_formula<F: Field>(target: &EmbeddingTarget, x: &Matrix<F>, y: &Matrix<F>) -> Result<SpringerGrassPoint<F>> {
    let f = x.field();
    let tau = target.tau_matrix(f);
    let tau_inv = tau.inverse().expect("permutation matrices are invertible");
    let yx = y.mul(x)?;
    let xy = x.mul(y)?;
    let xyx = xy.mul(x)?;
    let block = Matrix::from_blocks(&yx.neg(), y, &xyx.neg(), &xy)?;
    let v = target.embed_point(x)?;
    SpringerGrassPoint::new(v, tau.mul(&block)?.mul(&tau_inv)?)
}

fn springer_checks<F: Field>(pt: &SpringerGrassPoint<F>) -> Result<bool> {
    let n = pt.v.ambient();
    let square_zero = pt.x.mul(&pt.x)?.is_zero();
    let image_in_v = Subspace::column_span(&pt.x).is_subspace_of(&pt.v)?;
    let v_in_kernel = pt.v.image(&pt.x)?.dim() == 0;
    Ok(square_zero && image_in_v && v_in_kernel && pt.x.shape() == (n, n))
}

/// Ranks of signed and unsigned `M(i, j)` agree.
fn sign_invariance<F: Field>(pt: &CotangentMatrixPoint<F>, table: &ConormalBoundTable) -> Result<bool> {
    let n = pt.x.rows();
    let unsigned = big_matrix_m(pt)?;
    let signed = Matrix::from_fn(pt.x.field(), 2 * n, 2 * n, |a, b| {
        let v = unsigned.get(a, b).clone();
        if b < n {
            pt.x.field().neg(&v)
        } else {
            v
        }
    });
    for pb in &table.pairs {
        let (rows, cols) = mij_indices(table, n, pb.i, pb.j)?;
        if signed.select(&rows, &cols).rank() != unsigned.select(&rows, &cols).rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn conormal_grass(r: &Resolved, w: &PartialPermutation, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let n = w.n();
    let target = EmbeddingTarget::of(w)?;
    let table = ConormalBoundTable::new(&target.data);
    let mut failure = None;
    let mut checked = 0usize;
    for k in 0..r.trials {
        let x = sample_cell_point(&r.field, w, rng)?;
        let fiber = conormal_fiber_matrix(&x, w)?;
        let mut ys = if k == 0 { fiber.basis() } else { Vec::new() };
        ys.push(fiber.sample(rng)?);
        for y in ys {
            let pt = CotangentMatrixPoint::new(x.clone(), y.clone())?;
            if !in_conormal_matrix(&pt, w)?.member {
                continue;
            }
            checked += 1;
            let sp = grass_springer_formula(&target, &x, &y)?;
            let v = in_conormal_grass(&sp, &target.conditions)?;
            let invariants = springer_checks(&sp)?;
            let signs = sign_invariance(&pt, &table)?;
            if !(v.member && invariants && signs) && failure.is_none() {
                failure = Some((k, json!({ "grass": verdict_json(&v), "springer": invariants, "sign_invariant": signs })));
            }
        }
    }
    let pass = failure.is_none() && checked > 0;
    let sample = failure.as_ref().map(|f| f.0);
    Ok(Verdict::new(
        Suite::ConormalGrass,
        n,
        w.to_string(),
        pass,
        json!({ "checked": checked, "failure": failure.map(|f| f.1) }),
    )
    .at(sample))
}

/// Pushes a matrix-conormal point through `h#`, `τ#` and the Springer map and
/// compares with the closed formula; `None` when everything agrees.
fn chase<F: Field>(target: &EmbeddingTarget, pt: &CotangentMatrixPoint<F>) -> Result<Option<Value>> {
    let n = pt.x.rows();
    let pushed = springer_grass(&tau_sharp(target, &push_graph(pt)?)?, n)?;
    let formula = grass_springer_formula(target, &pt.x, &pt.y)?;
    let v = in_conormal_grass(&pushed, &target.conditions)?;
    let invariants = springer_checks(&pushed)?;
    if pushed == formula && v.member && invariants {
        return Ok(None);
    }
    Ok(Some(json!({ "matches_formula": pushed == formula, "grass": verdict_json(&v), "springer": invariants })))
}

fn diagram_chase(r: &Resolved, w: &PartialPermutation, rng: &mut ChaCha8Rng) -> Result<Verdict> {
    let n = w.n();
    let f = &r.field;
    let target = EmbeddingTarget::of(w)?;
    let mut failure = None;
    let mut checked = 0usize;
    for k in 0..r.trials {
        // matrix-conormal samples
        let x = sample_cell_point(f, w, rng)?;
        let y = conormal_fiber_matrix(&x, w)?.sample(rng)?;
        let pt = CotangentMatrixPoint::new(x, y)?;
        if in_conormal_matrix(&pt, w)?.member {
            checked += 1;
            if let Some(d) = chase(&target, &pt)? {
                failure.get_or_insert((k, d));
            }
        }
        if !w.is_full() {
            continue;
        }
        // flag-conormal samples enter through ι#: (g, g⁻¹zg) ↦ (g, g⁻¹z)
        let g = sample_cell_point(f, w, rng)?;
        let gi = g.inverse().expect("cell points of full permutations are invertible");
        let z = conormal_fiber_flag(&g, w)?.sample(rng)?;
        let flag_pt = SpringerFlagPoint::new(Flag::new(g.clone())?, z.clone())?;
        let flag_ok = in_conormal_flag(&flag_pt, w)?.member;
        let pt = push_iota(&g, &gi.mul(&z)?.mul(&g)?)?;
        let via_iota = pt.y == gi.mul(&z)?;
        let matrix_ok = in_conormal_matrix(&pt, w)?.member;
        checked += 1;
        let chased = chase(&target, &pt)?;
        if !(flag_ok && via_iota && matrix_ok && chased.is_none()) {
            failure.get_or_insert((k, json!({ "flag": flag_ok, "iota": via_iota, "matrix": matrix_ok, "chase": chased })));
        }
    }
    let pass = failure.is_none() && checked > 0;
    let sample = failure.as_ref().map(|f| f.0);
    Ok(Verdict::new(
        Suite::DiagramChase,
        n,
        w.to_string(),
        pass,
        json!({ "checked": checked, "failure": failure.map(|f| f.1) }),
    )
    .at(sample))
}

fn kl_covex(r: &Resolved) -> Result<Vec<Verdict>> {
    let e = PartialPermutation::identity(4);
    let smoke: PartialPermutation = "3412".parse().expect("literal");
    let p = kl_polynomial(&e, &smoke)?;
    let expect = PolynomialQ::from_coeffs(vec![1, 1]);
    let mut out = vec![Verdict::new(
        Suite::KlCovex,
        4,
        "P(e, 3412)",
        p == expect,
        json!({ "polynomial": p.to_string() }),
    )];
    let ws = covexillary_full(r.n_max);
    let checked: Vec<Verdict> = ws
        .par_iter()
        .map(|w| -> Result<Verdict> {
            let report = covexillary_kl_check(w)?;
            let bad: Vec<Value> = report
                .rows
                .iter()
                .filter(|row| !row.matched)
                .map(|row| json!({ "u": row.u.to_string(), "u_hat": row.u_hat.seq(), "matrix": row.matrix_side.to_string(), "grass": row.grass_side.to_string() }))
                .collect();
            let nontrivial = report.rows.iter().filter(|row| row.matrix_side != PolynomialQ::one()).count();
            Ok(Verdict::new(
                Suite::KlCovex,
                w.n(),
                w.to_string(),
                bad.is_empty(),
                json!({ "v_hat": report.v_hat.seq(), "rows": report.rows.len(), "nontrivial": nontrivial, "mismatches": bad }),
            ))
        })
        .collect::<Result<_>>()?;
    out.extend(checked);
    Ok(out)
}

fn multidegree(r: &Resolved) -> Result<Vec<Verdict>> {
    let found = calibrate_convention(2)?;
    let mut out = vec![Verdict::new(
        Suite::Multidegree,
        2,
        "calibration",
        found == vec![FROZEN_CONVENTION],
        json!({ "calibrated": found, "frozen": FROZEN_CONVENTION }),
    )];
    for w in covexillary_full(r.n_max) {
        let rep = verify_multidegree(&w)?;
        out.push(Verdict::new(
            Suite::Multidegree,
            w.n(),
            w.to_string(),
            rep.matched,
            json!({ "localized": rep.localized, "schubert": rep.schubert }),
        ));
    }
    Ok(out)
}

/// Whether the alternative terminal ranks `r_m ∈ {n, rank w}` of the bound
/// table give the same verdicts as the default on fiber and random samples.
pub fn padding_agreement(w: &PartialPermutation, field: &PrimeField, samples: usize, seed: u64) -> Result<bool> {
    let data = covexillary_data(w)?;
    let tables = [
        ConormalBoundTable::new(&data),
        ConormalBoundTable::with_terminal_rank(&data, w.n()),
        ConormalBoundTable::with_terminal_rank(&data, w.rank()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = w.n();
    for _ in 0..samples {
        let x = sample_cell_point(field, w, &mut rng)?;
        let fiber = conormal_fiber_matrix(&x, w)?;
        for y in [fiber.sample(&mut rng)?, Matrix::random(field, n, n, &mut rng)?] {
            let pt = CotangentMatrixPoint::new(x.clone(), y)?;
            let verdicts: Vec<bool> = tables
                .iter()
                .map(|t| crate::conormal::in_conormal_matrix_with(&pt, w, t).map(|v| v.member))
                .collect::<Result<_>>()?;
            if verdicts.iter().any(|&v| v != verdicts[0]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the bound table of `w` has a negative bound on a nonempty
/// submatrix. Such a pair rejects every point, the zero section included.
pub fn has_binding_negative_bound(w: &PartialPermutation) -> Result<bool> {
    let data = covexillary_data(w)?;
    let table = ConormalBoundTable::new(&data);
    let n = w.n();
    Ok(table.pairs.iter().any(|pb| {
        let (rows, cols) = mij_indices(&table, n, pb.i, pb.j).expect("pairs are in range");
        pb.bound < 0 && !rows.is_empty() && !cols.is_empty()
    }))
}
