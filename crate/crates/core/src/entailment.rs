//! The functional `phi` and degrees of entailment between word sequences.
//!
//! `phi(f) = Σ_l P(l) |f(ε,ε)_l|`: only the empty context counts, and each
//! member `l` of the universe contributes its probability times the absolute
//! diagonal entry of the operator there.
//!
//! The degree to which `x` entails `y` is `phi(x̃ ∧ ỹ) / phi(x̃)`, with the
//! meet taken component-wise in the distinguished basis.
//!
//! # Monte-Carlo estimator
//!
//! [`degree_mc`] samples members `l` of the universe i.i.d. from `P` and
//! evaluates both diagonals exactly at each sample. The sampling stream is
//! pinned so results are reproducible across runs and thread counts:
//!
//! - samples are split into chunks of [`MC_CHUNK`]; chunk `k` draws from
//!   `ChaCha8Rng::seed_from_u64(seed)` with stream `k` (a 64-bit counter
//!   based generator);
//! - each sample is one `f64` uniform in `[0, 1)` (53 random bits) mapped
//!   through the inverse CDF of `P` over universe order;
//! - per-chunk results are integer visit counts per member, merged by sum.
//!
//! The standard error is the delete-one jackknife of the ratio estimator.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Context, ContextFunction};
use crate::logic::{parse_formula, Universe};
use crate::projections::{same_universe, DiagOperator};
use crate::semantics::{sentence_vector, Lexicon, OperatorLanguage};
use crate::{Error, Result};

/// Samples per independently seeded stream.
pub const MC_CHUNK: usize = 4096;

const SIMPLEX_TOL: f64 = 1e-9;

/// A probability distribution over the members of a universe.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    universe: Arc<Universe>,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(universe: Arc<Universe>, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != universe.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} probabilities for {} formulas",
                probs.len(),
                universe.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidDistribution(format!("invalid probability {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {sum}")));
        }
        Ok(Distribution { universe, probs })
    }

    pub fn uniform(universe: Arc<Universe>) -> Result<Self> {
        if universe.is_empty() {
            return Err(Error::InvalidDistribution("empty universe".into()));
        }
        let n = universe.len();
        Ok(Distribution { universe, probs: vec![1.0 / n as f64; n] })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// `{"probs": {"p & q": 0.1, ..}}`, keyed by formula text. Members not
/// listed share the remaining mass equally.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct DistributionFile {
    pub probs: BTreeMap<String, f64>,
}

impl DistributionFile {
    pub fn into_distribution(self, universe: Arc<Universe>) -> Result<Distribution> {
        let mut probs: Vec<Option<f64>> = vec![None; universe.len()];
        for (text, p) in &self.probs {
            let f = parse_formula(text)?;
            let i = universe.index_of(&f).ok_or_else(|| {
                Error::InvalidDistribution(format!("`{text}` is not a member of the universe"))
            })?;
            if probs[i].replace(*p).is_some() {
                return Err(Error::InvalidDistribution(format!("`{text}` listed twice")));
            }
        }
        let listed: f64 = probs.iter().flatten().sum();
        let unlisted = probs.iter().filter(|p| p.is_none()).count();
        let residual = 1.0 - listed;
        if residual < -SIMPLEX_TOL {
            return Err(Error::InvalidDistribution(format!("listed mass {listed} exceeds 1")));
        }
        if unlisted == 0 && residual.abs() > SIMPLEX_TOL {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {listed}")));
        }
        let share = if unlisted > 0 { residual.max(0.0) / unlisted as f64 } else { 0.0 };
        Distribution::new(universe, probs.into_iter().map(|p| p.unwrap_or(share)).collect())
    }
}

/// `phi(f) = Σ_l P(l) |f(ε,ε)_l|`
pub fn phi(f: &ContextFunction<DiagOperator>, dist: &Distribution) -> Result<f64> {
    if !same_universe(f.space(), &dist.universe) {
        return Err(Error::UniverseMismatch);
    }
    Ok(match f.get(&Context::empty()) {
        Some(op) => op.diag().iter().zip(&dist.probs).map(|(d, p)| p * d.abs()).sum(),
        None => 0.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Mc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeResult {
    pub degree: f64,
    /// `phi(x̃ ∧ ỹ)` (a sample sum in Monte-Carlo mode)
    pub numerator: f64,
    /// `phi(x̃)` (a sample sum in Monte-Carlo mode)
    pub denominator: f64,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
}

struct Pair {
    x: ContextFunction<DiagOperator>,
    meet: ContextFunction<DiagOperator>,
}

fn compose_pair<S: AsRef<str>>(
    x: &[S],
    y: &[S],
    lexicon: &Lexicon,
    language: &Arc<OperatorLanguage>,
    dist: &Distribution,
) -> Result<Pair> {
    if !same_universe(language.space(), &dist.universe) {
        return Err(Error::UniverseMismatch);
    }
    let xt = sentence_vector(x, lexicon, language)?;
    let yt = sentence_vector(y, lexicon, language)?;
    let meet = xt.function().meet(yt.function())?;
    Ok(Pair { x: xt.function().clone(), meet })
}

/// `phi(x̃ ∧ ỹ) / phi(x̃)`, computed exactly.
pub fn degree_exact<S: AsRef<str>>(
    x: &[S],
    y: &[S],
    lexicon: &Lexicon,
    language: &Arc<OperatorLanguage>,
    dist: &Distribution,
) -> Result<DegreeResult> {
    if !lexicon.nonnegative_for(x)? || !lexicon.nonnegative_for(y)? {
        log::warn!("negative lexicon weights: the degree may fall outside [0, 1]");
    }
    let pair = compose_pair(x, y, lexicon, language, dist)?;
    let numerator = phi(&pair.meet, dist)?;
    let denominator = phi(&pair.x, dist)?;
    if denominator <= 0.0 {
        return Err(Error::ZeroDenominator(denominator));
    }
    Ok(DegreeResult {
        degree: numerator / denominator,
        numerator,
        denominator,
        mode: Mode::Exact,
        samples: None,
        seed: None,
        stderr: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McOptions {
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; the result does not depend on this.
    pub threads: usize,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions { samples: 50_000, seed: 0, threads: 1 }
    }
}

/// Monte-Carlo estimate of the degree by sampling members of the universe.
/// Requires nonnegative lexicon weights for the words involved.
pub fn degree_mc<S: AsRef<str>>(
    x: &[S],
    y: &[S],
    lexicon: &Lexicon,
    language: &Arc<OperatorLanguage>,
    dist: &Distribution,
    options: McOptions,
) -> Result<DegreeResult> {
    if options.samples == 0 {
        return Err(Error::InvalidInput("samples must be at least 1".into()));
    }
    if !lexicon.nonnegative_for(x)? || !lexicon.nonnegative_for(y)? {
        return Err(Error::InvalidInput(
            "Monte-Carlo estimation requires nonnegative lexicon weights".into(),
        ));
    }
    let pair = compose_pair(x, y, lexicon, language, dist)?;
    let n = dist.universe.len();
    let diag_abs = |f: &ContextFunction<DiagOperator>| -> Vec<f64> {
        f.get(&Context::empty())
            .map(|op| op.diag().iter().map(|d| d.abs()).collect())
            .unwrap_or_else(|| vec![0.0; n])
    };
    let dx = diag_abs(&pair.x);
    let dm = diag_abs(&pair.meet);

    let counts = sample_counts(&dist.probs, options);
    let numerator: f64 = counts.iter().zip(&dm).map(|(c, d)| *c as f64 * d).sum();
    let denominator: f64 = counts.iter().zip(&dx).map(|(c, d)| *c as f64 * d).sum();
    if denominator <= 0.0 {
        return Err(Error::EstimationFailed(format!(
            "none of the {} samples hit a dimension where x is nonzero",
            options.samples
        )));
    }
    let degree = numerator / denominator;
    Ok(DegreeResult {
        degree,
        numerator,
        denominator,
        mode: Mode::Mc,
        samples: Some(options.samples),
        seed: Some(options.seed),
        stderr: jackknife_stderr(&counts, &dm, &dx, numerator, denominator),
    })
}

/// Visit counts per member for the pinned sampling stream.
pub fn sample_counts(probs: &[f64], options: McOptions) -> Vec<u64> {
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in probs {
        acc += p;
        cdf.push(acc);
    }
    let last_positive = probs.iter().rposition(|p| *p > 0.0).unwrap_or(0);
    let chunks = options.samples.div_ceil(MC_CHUNK);
    let run_chunk = |k: usize| -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        rng.set_stream(k as u64);
        let len = MC_CHUNK.min(options.samples - k * MC_CHUNK);
        let mut counts = vec![0u64; probs.len()];
        for _ in 0..len {
            let u: f64 = rng.random();
            let i = cdf.partition_point(|c| *c <= u).min(last_positive);
            counts[i] += 1;
        }
        counts
    };

    let threads = options.threads.clamp(1, chunks.max(1));
    let per_chunk: Vec<Vec<u64>> = if threads == 1 {
        (0..chunks).map(run_chunk).collect()
    } else {
        let mut slots: Vec<Option<Vec<u64>>> = vec![None; chunks];
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let run_chunk = &run_chunk;
                    scope.spawn(move || {
                        (t..chunks).step_by(threads).map(|k| (k, run_chunk(k))).collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (k, c) in h.join().expect("sampling worker panicked") {
                    slots[k] = Some(c);
                }
            }
        });
        slots.into_iter().map(|s| s.expect("every chunk is sampled")).collect()
    };

    let mut total = vec![0u64; probs.len()];
    for c in per_chunk {
        for (t, v) in total.iter_mut().zip(c) {
            *t += v;
        }
    }
    total
}

/// Delete-one jackknife for `Σ m / Σ x`. Samples at the same member are
/// interchangeable, so the leave-one-out ratios are grouped by member.
fn jackknife_stderr(counts: &[u64], dm: &[f64], dx: &[f64], m: f64, x: f64) -> Option<f64> {
    let n: u64 = counts.iter().sum();
    if n < 2 {
        return None;
    }
    let mut loo = Vec::new();
    for (l, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let den = x - dx[l];
        if den <= 0.0 {
            return None;
        }
        loo.push((c as f64, (m - dm[l]) / den));
    }
    let nf = n as f64;
    let mean = loo.iter().map(|(c, r)| c * r).sum::<f64>() / nf;
    let ss = loo.iter().map(|(c, r)| c * (r - mean).powi(2)).sum::<f64>();
    Some(((nf - 1.0) / nf * ss).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Formula;
    use crate::semantics::{build_aspect_language, InterpretationFile};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn toy_universe() -> Arc<Universe> {
        Arc::new(
            Universe::new(
                vec!["p".into(), "q".into()],
                ["true", "false", "p", "q", "p & q"].map(f).to_vec(),
            )
            .unwrap(),
        )
    }

    struct Toy {
        lex: Lexicon,
        lang: Arc<OperatorLanguage>,
        dist: Distribution,
    }

    fn toy() -> Toy {
        let u = toy_universe();
        let interp = InterpretationFile {
            aspects: vec!["s1".into(), "s2".into()],
            delta: [("s1", "p"), ("s2", "q"), ("s1 s2", "p & q")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
        .into_interpretation(u.clone())
        .unwrap();
        let lang = Arc::new(build_aspect_language(&interp).unwrap());
        let lex = Lexicon::new(
            [("w1", "s1"), ("w2", "s2")]
                .iter()
                .map(|(w, s)| (w.to_string(), [(s.to_string(), 1.0)].into()))
                .collect(),
        )
        .unwrap();
        Toy { lex, lang, dist: Distribution::uniform(u).unwrap() }
    }

    fn single(op: DiagOperator) -> ContextFunction<DiagOperator> {
        let space = op.universe().clone();
        ContextFunction::from_entries(space, [(Context::empty(), op)]).unwrap()
    }

    #[test]
    fn phi_values() {
        let u = toy_universe();
        let dist = Distribution::uniform(u.clone()).unwrap();
        let pq = crate::projections::projection_of(&f("p & q"), &u).unwrap();
        assert!((phi(&single(pq), &dist).unwrap() - 0.4).abs() < 1e-15);
        assert_eq!(phi(&ContextFunction::zero(u.clone()), &dist).unwrap(), 0.0);
        let one = DiagOperator::identity(u.clone());
        assert!((phi(&single(one), &dist).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn phi_ignores_other_contexts() {
        let u = toy_universe();
        let dist = Distribution::uniform(u.clone()).unwrap();
        let al = crate::algebra::Alphabet::new(["a"]).unwrap();
        let c = Context::new(al.parse("a").unwrap(), crate::algebra::Str::empty());
        let g = ContextFunction::from_entries(u.clone(), [(c, DiagOperator::identity(u))]).unwrap();
        assert_eq!(phi(&g, &dist).unwrap(), 0.0);
    }

    #[test]
    fn toy_degrees() {
        let t = toy();
        let r = degree_exact(&["w1", "w2"], &["w1"], &t.lex, &t.lang, &t.dist).unwrap();
        assert_eq!(r.degree, 1.0);
        let r = degree_exact(&["w1"], &["w1", "w2"], &t.lex, &t.lang, &t.dist).unwrap();
        assert!((r.degree - 2.0 / 3.0).abs() < 1e-12);
        assert!((r.numerator - 0.4).abs() < 1e-12);
        assert!((r.denominator - 0.6).abs() < 1e-12);
        let r = degree_exact(&["w2"], &["w2"], &t.lex, &t.lang, &t.dist).unwrap();
        assert_eq!(r.degree, 1.0);
    }

    #[test]
    fn zero_denominator() {
        let t = toy();
        let r = degree_exact(&["w2", "w1"], &["w1"], &t.lex, &t.lang, &t.dist);
        assert!(matches!(r, Err(Error::ZeroDenominator(_))));
        let r = degree_mc(&["w2", "w1"], &["w1"], &t.lex, &t.lang, &t.dist, McOptions::default());
        assert!(matches!(r, Err(Error::EstimationFailed(_))));
    }

    #[test]
    fn mc_is_deterministic_and_thread_invariant() {
        let t = toy();
        let opts = McOptions { samples: 20_000, seed: 7, threads: 1 };
        let a = degree_mc(&["w1"], &["w1", "w2"], &t.lex, &t.lang, &t.dist, opts).unwrap();
        let b = degree_mc(&["w1"], &["w1", "w2"], &t.lex, &t.lang, &t.dist, opts).unwrap();
        assert_eq!(a, b);
        let c = degree_mc(
            &["w1"],
            &["w1", "w2"],
            &t.lex,
            &t.lang,
            &t.dist,
            McOptions { threads: 3, ..opts },
        )
        .unwrap();
        assert_eq!(a, c);
        assert!(a.stderr.unwrap() > 0.0);
        assert!((a.degree - 2.0 / 3.0).abs() < 0.03);
    }

    #[test]
    fn mc_single_dimension_support_is_exact() {
        // P puts all mass on `p & q`, where x = w1 is 1 and the meet is 1
        let u = toy_universe();
        let t = toy();
        let dist = Distribution::new(u, vec![0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        for seed in [0, 1, 99] {
            let r = degree_mc(
                &["w1"],
                &["w1", "w2"],
                &t.lex,
                &t.lang,
                &dist,
                McOptions { samples: 100, seed, threads: 1 },
            )
            .unwrap();
            assert_eq!(r.degree, 1.0);
            assert_eq!(r.stderr, Some(0.0));
        }
    }

    #[test]
    fn mc_rejects_negative_weights() {
        let t = toy();
        let lex = Lexicon::new(
            [("w1".to_string(), [("s1".to_string(), -1.0)].into())].into(),
        )
        .unwrap();
        let r = degree_mc(&["w1"], &["w1"], &lex, &t.lang, &t.dist, McOptions::default());
        assert!(matches!(r, Err(Error::InvalidInput(_))));
        assert!(degree_exact(&["w1"], &["w1"], &lex, &t.lang, &t.dist).is_ok());
    }

    #[test]
    fn sampling_follows_distribution() {
        let probs = [0.5, 0.0, 0.25, 0.25];
        let counts = sample_counts(&probs, McOptions { samples: 40_000, seed: 3, threads: 2 });
        assert_eq!(counts.iter().sum::<u64>(), 40_000);
        assert_eq!(counts[1], 0);
        assert!((counts[0] as f64 / 40_000.0 - 0.5).abs() < 0.02);
    }

    #[test]
    fn distribution_files() {
        let u = toy_universe();
        let file = DistributionFile { probs: [("p & q".to_string(), 0.6)].into() };
        let d = file.into_distribution(u.clone()).unwrap();
        assert_eq!(d.probs()[4], 0.6);
        assert!((d.probs()[0] - 0.1).abs() < 1e-15);
        let over = DistributionFile { probs: [("p".to_string(), 1.5)].into() };
        assert!(over.into_distribution(u.clone()).is_err());
        let stranger = DistributionFile { probs: [("p | q".to_string(), 0.5)].into() };
        assert!(stranger.into_distribution(u.clone()).is_err());
        let neg = DistributionFile { probs: [("p".to_string(), -0.1)].into() };
        assert!(neg.into_distribution(u.clone()).is_err());
        assert!(Distribution::new(u.clone(), vec![0.5; 5]).is_err());
        assert!(Distribution::new(u, vec![1.0]).is_err());
    }
}
