//! Jordan structure of nilpotent Jacobi operators and sampling-based
//! Osserman verdicts.
//!
//! For a nilpotent operator the ranks of its powers determine the Jordan
//! partition completely: the number of blocks of size at least `k` is
//! `rank(J^{k-1}) − rank(J^k)`. Vectors are sampled with integer entries and
//! never normalized, since `J(λx) = λ²J(x)` leaves the rank sequence unchanged
//! for `λ ≠ 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::{CurvatureTensor, InnerProduct, JacobiField};
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::scalar::Rational;

pub const DEFAULT_BOUND: i64 = 10;
pub const RESAMPLE_CAP: usize = 1000;

/// `rank(J^k)` for `k = 1, 2, ...`, stopping before the first zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankSequence {
    pub dim: usize,
    pub ranks: Vec<usize>,
}

impl RankSequence {
    pub fn new(dim: usize, ranks: Vec<usize>) -> Result<Self> {
        let seq = RankSequence { dim, ranks };
        seq.check()?;
        Ok(seq)
    }

    fn check(&self) -> Result<()> {
        if self.ranks.contains(&0) {
            return Err(Error::InvalidSequence(format!("ranks {:?} contain a zero", self.ranks)));
        }
        let mut prev = self.dim;
        let mut prev_drop = usize::MAX;
        for &r in self.ranks.iter().chain(std::iter::once(&0)) {
            if r >= prev && !(r == 0 && prev == 0) {
                return Err(Error::InvalidSequence(format!(
                    "ranks {:?} (dim {}) are not strictly decreasing",
                    self.ranks, self.dim
                )));
            }
            let drop = prev - r;
            if drop > prev_drop {
                return Err(Error::InvalidSequence(format!(
                    "rank drops of {:?} (dim {}) increase",
                    self.ranks, self.dim
                )));
            }
            prev_drop = drop;
            prev = r;
        }
        Ok(())
    }

    /// Smallest `n` with `J^n = 0`; 1 for the zero operator.
    pub fn nilpotency_order(&self) -> usize {
        self.ranks.len() + 1
    }
}

/// Rank sequence of a nilpotent operator; `NonNilpotent` if the ranks of
/// successive powers stall above zero.
pub fn rank_sequence(j: &RatMatrix) -> Result<RankSequence> {
    if !j.is_square() {
        return Err(Error::DimensionMismatch { expected: j.rows(), got: j.cols() });
    }
    let dim = j.rows();
    let mut ranks = Vec::new();
    let mut power = j.clone();
    let mut prev = dim;
    loop {
        let r = linalg::rank(&power);
        if r == 0 {
            break;
        }
        if r == prev {
            return Err(Error::NonNilpotent { direction: Vec::new() });
        }
        ranks.push(r);
        prev = r;
        power = power.mul(j)?;
    }
    Ok(RankSequence { dim, ranks })
}

/// Jordan block sizes for eigenvalue zero, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JordanPartition(pub Vec<usize>);

impl JordanPartition {
    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest_block(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Block-diagonal nilpotent Jordan matrix with ones on the superdiagonal
    /// inside each block.
    pub fn jordan_matrix(&self) -> RatMatrix {
        let n = self.dim();
        let mut m = RatMatrix::zeros(n, n);
        let mut start = 0;
        for &b in &self.0 {
            for k in 1..b {
                m[(start + k - 1, start + k)] = Rational::one();
            }
            start += b;
        }
        m
    }
}

impl fmt::Display for JordanPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Conjugate-partition construction from rank drops.
pub fn partition_from_ranks(seq: &RankSequence) -> Result<JordanPartition> {
    seq.check()?;
    let mut levels = vec![seq.dim];
    levels.extend(&seq.ranks);
    levels.push(0);
    // at_least[k] = number of blocks of size >= k + 1
    let at_least: Vec<usize> = levels.windows(2).map(|w| w[0] - w[1]).collect();
    let mut blocks = Vec::new();
    for size in (1..=at_least.len()).rev() {
        let here = at_least[size - 1] - at_least.get(size).copied().unwrap_or(0);
        blocks.extend(std::iter::repeat_n(size, here));
    }
    Ok(JordanPartition(blocks))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Causal {
    Spacelike,
    Timelike,
}

impl Causal {
    pub fn accepts(self, norm2: &Rational) -> bool {
        match self {
            Causal::Spacelike => norm2.is_positive(),
            Causal::Timelike => norm2.is_negative(),
        }
    }

    fn stream_tag(self) -> u64 {
        match self {
            Causal::Spacelike => 0,
            Causal::Timelike => 1,
        }
    }
}

impl fmt::Display for Causal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Causal::Spacelike => "spacelike",
            Causal::Timelike => "timelike",
        })
    }
}

/// Draws an integer vector with entries in `[-bound, bound]` of the requested
/// causal type. Draw `index` uses its own ChaCha stream, so the result does
/// not depend on how draws are scheduled.
pub fn sample_vector(
    g: &InnerProduct,
    causal: Causal,
    seed: u64,
    index: u64,
    bound: i64,
) -> Result<Vec<Rational>> {
    if bound < 1 {
        return Err(Error::InvalidInput(format!("bound must be >= 1, got {bound}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((index << 1) | causal.stream_tag());
    let n = g.dim();
    for _ in 0..RESAMPLE_CAP {
        let x: Vec<Rational> = (0..n)
            .map(|_| Rational::from(rng.gen_range(-bound..=bound)))
            .collect();
        if causal.accepts(&g.norm2(&x)?) {
            return Ok(x);
        }
    }
    Err(Error::SamplingExhausted { causal: causal.to_string(), attempts: RESAMPLE_CAP })
}

/// Deterministic probe directions: every frame vector, then `e_i + e_j` and
/// `e_i − e_j` for `i < j`, in that order.
pub fn probe_vectors(dim: usize) -> Vec<Vec<Rational>> {
    let e = |i: usize, j: Option<(usize, i64)>| {
        let mut v = vec![Rational::zero(); dim];
        v[i] = Rational::one();
        if let Some((j, sign)) = j {
            v[j] = Rational::from(sign);
        }
        v
    };
    let mut out: Vec<Vec<Rational>> = (0..dim).map(|i| e(i, None)).collect();
    for i in 0..dim {
        for j in (i + 1)..dim {
            out.push(e(i, Some((j, 1))));
            out.push(e(i, Some((j, -1))));
        }
    }
    out
}

/// A `g`-orthogonal basis whose squared lengths lie in `[1/4, 4)`, used
/// when integer vectors of the wanted causal type are too rare in the
/// coordinate basis.
#[derive(Debug, Clone)]
pub struct SamplingFrame {
    basis: RatMatrix,
    lengths: Vec<Rational>,
}

impl SamplingFrame {
    pub fn new(g: &InnerProduct) -> Result<Self> {
        let (p, d) = linalg::congruence_basis(g.gram())?;
        let n = d.len();
        let mut scale = Vec::with_capacity(n);
        let mut lengths = Vec::with_capacity(n);
        for x in &d {
            let c = if x.is_zero() {
                Rational::one()
            } else if x.abs() >= Rational::one() {
                Rational::from_bigint((x.abs().numer() / x.denom()).sqrt()).recip()
            } else {
                Rational::from_bigint((x.denom() / x.abs().numer()).sqrt())
            };
            lengths.push(x * &c * &c);
            scale.push(c);
        }
        let basis = RatMatrix::from_fn(n, n, |i, j| &p[(i, j)] * &scale[j]);
        Ok(SamplingFrame { basis, lengths })
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    /// Rejection sampling of frame coefficients, mapped back to coordinates
    /// and rescaled to a primitive integer vector.
    pub fn sample(&self, causal: Causal, seed: u64, index: u64, bound: i64) -> Result<Vec<Rational>> {
        let exhausted = || Error::SamplingExhausted { causal: causal.to_string(), attempts: RESAMPLE_CAP };
        let possible = self.lengths.iter().any(|l| causal.accepts(l));
        if !possible {
            return Err(exhausted());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ FRAME_SEED_MIX);
        rng.set_stream((index << 1) | causal.stream_tag());
        let n = self.lengths.len();
        for _ in 0..RESAMPLE_CAP {
            let y: Vec<Rational> = (0..n).map(|_| Rational::from(rng.gen_range(-bound..=bound))).collect();
            let q: Rational = y.iter().zip(&self.lengths).map(|(a, l)| a * a * l).sum();
            if causal.accepts(&q) {
                return Ok(primitive(self.basis.mul_vec(&y)?));
            }
        }
        Err(exhausted())
    }
}

const FRAME_SEED_MIX: u64 = 0x2545_f491_4f6c_dd1d;

/// Positive rational multiple of `x` with coprime integer entries.
fn primitive(x: Vec<Rational>) -> Vec<Rational> {
    let lcm = Rational::common_denominator(&x);
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let gcd = ints.iter().fold(BigInt::from(0), |g, v| g.gcd(v));
    if gcd == BigInt::from(0) {
        return x;
    }
    ints.into_iter().map(|v| Rational::from_bigint(v / &gcd)).collect()
}

/// One tangent space to test: an inner product and the curvature on it,
/// optionally tagged with the base point it came from.
#[derive(Debug, Clone)]
pub struct Site {
    pub inner: InnerProduct,
    pub field: JacobiField,
    pub base_point: Option<Vec<Rational>>,
    pub frame: SamplingFrame,
}

impl Site {
    pub fn new(r: &CurvatureTensor, g: &InnerProduct) -> Result<Self> {
        Ok(Site {
            inner: g.clone(),
            field: JacobiField::new(r, g)?,
            base_point: None,
            frame: SamplingFrame::new(g)?,
        })
    }

    pub fn at_point(r: &CurvatureTensor, g: &InnerProduct, point: Vec<Rational>) -> Result<Self> {
        Ok(Site { base_point: Some(point), ..Site::new(r, g)? })
    }

    /// A direction of the given causal type: coordinate-basis rejection
    /// sampling first, the orthogonal frame only if that runs out.
    pub fn sample(&self, causal: Causal, seed: u64, index: u64, bound: i64) -> Result<Vec<Rational>> {
        match sample_vector(&self.inner, causal, seed, index, bound) {
            Err(Error::SamplingExhausted { .. }) => {
                let x = self.frame.sample(causal, seed, index, bound)?;
                debug_assert!(causal.accepts(&self.inner.norm2(&x)?));
                Ok(x)
            }
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Probe,
    Sample,
}

/// Jordan data for one sampled direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub origin: Origin,
    pub site: usize,
    pub vector: Vec<Rational>,
    pub ranks: RankSequence,
    pub partition: JordanPartition,
}

impl Evaluation {
    pub fn nilpotency_order(&self) -> usize {
        self.ranks.nilpotency_order()
    }
}

fn evaluate(site: &Site, site_index: usize, origin: Origin, x: Vec<Rational>) -> Result<Evaluation> {
    let j = site.field.at(&x)?;
    let ranks = rank_sequence(&j.matrix).map_err(|e| match e {
        Error::NonNilpotent { .. } => Error::NonNilpotent {
            direction: x.iter().map(ToString::to_string).collect(),
        },
        other => other,
    })?;
    let partition = partition_from_ranks(&ranks)?;
    Ok(Evaluation { origin, site: site_index, vector: x, ranks, partition })
}

/// All evaluations for one causal type: probes at site 0 followed by
/// `samples` random draws assigned round-robin to the sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survey {
    pub causal: Causal,
    pub seed: u64,
    pub samples: usize,
    pub evaluations: Vec<Evaluation>,
}

pub fn survey(sites: &[Site], causal: Causal, samples: usize, seed: u64, bound: i64) -> Result<Survey> {
    let Some(first) = sites.first() else {
        return Err(Error::InvalidInput("no sites to survey".into()));
    };
    let mut evaluations = Vec::new();
    for x in probe_vectors(first.inner.dim()) {
        if causal.accepts(&first.inner.norm2(&x)?) {
            evaluations.push(evaluate(first, 0, Origin::Probe, x)?);
        }
    }
    let drawn: Vec<Result<Evaluation>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let k = i % sites.len();
            let x = sites[k].sample(causal, seed, i as u64, bound)?;
            evaluate(&sites[k], k, Origin::Sample, x)
        })
        .collect();
    for e in drawn {
        evaluations.push(e?);
    }
    Ok(Survey { causal, seed, samples, evaluations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Constant,
    NonConstant,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Constant => "constant",
            Status::NonConstant => "non-constant",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OssermanVerdict {
    pub causal: Causal,
    pub status: Status,
    pub partition: Option<JordanPartition>,
    pub witness: Option<(Evaluation, Evaluation)>,
    pub probes: usize,
    pub samples: usize,
    pub seed: u64,
    /// How often each partition was seen.
    pub observed: Vec<(JordanPartition, usize)>,
}

impl Survey {
    pub fn verdict(&self) -> OssermanVerdict {
        let probes = self.evaluations.iter().filter(|e| e.origin == Origin::Probe).count();
        let mut counts: BTreeMap<&JordanPartition, usize> = BTreeMap::new();
        for e in &self.evaluations {
            *counts.entry(&e.partition).or_default() += 1;
        }
        let observed = counts.into_iter().rev().map(|(p, n)| (p.clone(), n)).collect();
        let mut verdict = OssermanVerdict {
            causal: self.causal,
            status: Status::Inconclusive,
            partition: None,
            witness: None,
            probes,
            samples: self.samples,
            seed: self.seed,
            observed,
        };
        let Some(base) = self.evaluations.first() else {
            return verdict;
        };
        if let Some(other) = self.evaluations.iter().find(|e| e.partition != base.partition) {
            verdict.status = Status::NonConstant;
            verdict.witness = Some((base.clone(), other.clone()));
        } else if self.evaluations.len() >= 2 {
            verdict.status = Status::Constant;
            verdict.partition = Some(base.partition.clone());
        }
        verdict
    }

    pub fn nilpotency(&self) -> NilpotencyReport {
        let orders: Vec<usize> = self.evaluations.iter().map(Evaluation::nilpotency_order).collect();
        let max_order = orders.iter().copied().max().unwrap_or(0);
        NilpotencyReport { causal: self.causal, orders, max_order }
    }
}

/// Per-direction nilpotency orders; `max_order` bounds the manifold order from below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyReport {
    pub causal: Causal,
    pub orders: Vec<usize>,
    pub max_order: usize,
}

pub fn verify_jordan_osserman(
    r: &CurvatureTensor,
    g: &InnerProduct,
    causal: Causal,
    samples: usize,
    seed: u64,
) -> Result<OssermanVerdict> {
    if samples < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 samples, got {samples}")));
    }
    let site = Site::new(r, g)?;
    Ok(survey(std::slice::from_ref(&site), causal, samples, seed, DEFAULT_BOUND)?.verdict())
}

pub fn nilpotency_report(
    r: &CurvatureTensor,
    g: &InnerProduct,
    causal: Causal,
    samples: usize,
    seed: u64,
) -> Result<NilpotencyReport> {
    let site = Site::new(r, g)?;
    Ok(survey(std::slice::from_ref(&site), causal, samples, seed, DEFAULT_BOUND)?.nilpotency())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{constant_curvature_tensor, jacobi, model_curvature, model_inner_product};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn unit(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|k| if k == i { q(1) } else { q(0) }).collect()
    }

    fn model(s: usize, g_ab: RatMatrix) -> (CurvatureTensor, InnerProduct) {
        let r = model_curvature(&CurvatureTensor::zero(s), &constant_curvature_tensor(s)).unwrap();
        (r, model_inner_product(s, &g_ab).unwrap())
    }

    #[test]
    fn rank_sequence_examples() {
        assert_eq!(rank_sequence(&RatMatrix::zeros(6, 6)).unwrap().ranks, Vec::<usize>::new());
        let (r, g) = model(2, RatMatrix::identity(2));
        let j = jacobi(&r, &g, &unit(6, 0)).unwrap().matrix;
        assert_eq!(rank_sequence(&j).unwrap().ranks, vec![2, 1]);
        assert!(matches!(rank_sequence(&RatMatrix::identity(3)), Err(Error::NonNilpotent { .. })));
        // nilpotent part plus nonzero eigenvalue
        let m = RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 2]]);
        assert!(matches!(rank_sequence(&m), Err(Error::NonNilpotent { .. })));
    }

    #[test]
    fn partition_examples() {
        let p = partition_from_ranks(&RankSequence::new(6, vec![2, 1]).unwrap()).unwrap();
        assert_eq!(p, JordanPartition(vec![3, 1, 1, 1]));
        assert_eq!(p.to_string(), "[3,1,1,1]");
        for s in 2..=6 {
            let seq = RankSequence::new(3 * s, vec![2 * (s - 1), s - 1]).unwrap();
            let p = partition_from_ranks(&seq).unwrap();
            let mut expected = vec![3; s - 1];
            expected.extend([1, 1, 1]);
            assert_eq!(p.0, expected);
        }
        let p = partition_from_ranks(&RankSequence::new(5, vec![]).unwrap()).unwrap();
        assert_eq!(p.0, vec![1; 5]);
    }

    #[test]
    fn invalid_sequences_rejected() {
        // drops 1, 2: not non-increasing
        assert!(matches!(RankSequence::new(5, vec![4, 2]), Err(Error::InvalidSequence(_))));
        assert!(matches!(RankSequence::new(3, vec![3]), Err(Error::InvalidSequence(_))));
        assert!(matches!(RankSequence::new(4, vec![2, 2]), Err(Error::InvalidSequence(_))));
        let bad = RankSequence { dim: 5, ranks: vec![4, 2] };
        assert!(partition_from_ranks(&bad).is_err());
    }

    #[test]
    fn jordan_matrix_matches_partition() {
        let p = JordanPartition(vec![3, 1, 1, 1]);
        let j = p.jordan_matrix();
        let seq = rank_sequence(&j).unwrap();
        assert_eq!(partition_from_ranks(&seq).unwrap(), p);
    }

    #[test]
    fn sample_vector_respects_causal_type() {
        let (_, g) = model(2, RatMatrix::identity(2));
        for i in 0..20 {
            let x = sample_vector(&g, Causal::Spacelike, 3, i, 10).unwrap();
            assert!(g.norm2(&x).unwrap().is_positive());
            assert!(x.iter().all(|v| v.is_integer() && v.abs() <= q(10)));
            let y = sample_vector(&g, Causal::Timelike, 3, i, 10).unwrap();
            assert!(g.norm2(&y).unwrap().is_negative());
        }
        assert_eq!(
            sample_vector(&g, Causal::Spacelike, 9, 4, 10).unwrap(),
            sample_vector(&g, Causal::Spacelike, 9, 4, 10).unwrap()
        );
    }

    #[test]
    fn named_vectors_have_expected_causal_type() {
        let (_, g) = model(2, RatMatrix::identity(2));
        assert_eq!(g.norm2(&unit(6, 0)).unwrap(), q(1));
        let (_, g0) = model(2, RatMatrix::zeros(2, 2));
        let mut x = unit(6, 0);
        x[2] = q(-1);
        assert_eq!(g0.norm2(&x).unwrap(), q(-2));
        assert_eq!(g0.norm2(&unit(6, 4)).unwrap(), q(-1));
    }

    #[test]
    fn frame_sampling_reaches_a_thin_cone() {
        // g(x,x) = x0 x1 - 100 x0^2 - 100 x1^2 - x2^2 is positive only on a
        // sliver that integer coordinate draws essentially never hit.
        let gram = RatMatrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) | (1, 1) => q(-100),
            (0, 1) | (1, 0) => Rational::new(201, 2),
            (2, 2) => q(-1),
            _ => q(0),
        });
        let g = InnerProduct::new(gram).unwrap();
        let frame = SamplingFrame::new(&g).unwrap();
        assert!(frame.lengths().iter().all(|l| l.is_zero() || (l.abs() >= Rational::new(1, 4) && l.abs() < q(4))));
        for i in 0..20 {
            let x = frame.sample(Causal::Spacelike, 5, i, 10).unwrap();
            assert!(g.norm2(&x).unwrap().is_positive());
            assert!(x.iter().all(Rational::is_integer));
        }
        let r = CurvatureTensor::zero(3);
        let site = Site::new(&r, &g).unwrap();
        assert!(g.norm2(&site.sample(Causal::Spacelike, 1, 0, 10).unwrap()).unwrap().is_positive());
    }

    #[test]
    fn sampling_exhausts_for_missing_causal_type() {
        let g = InnerProduct::new(RatMatrix::identity(3)).unwrap();
        assert!(matches!(
            sample_vector(&g, Causal::Timelike, 0, 0, 10),
            Err(Error::SamplingExhausted { .. })
        ));
    }

    #[test]
    fn model_verdicts() {
        let (r, g) = model(2, RatMatrix::zeros(2, 2));
        let v = verify_jordan_osserman(&r, &g, Causal::Spacelike, 50, 1).unwrap();
        assert_eq!(v.status, Status::Constant);
        assert_eq!(v.partition, Some(JordanPartition(vec![3, 1, 1, 1])));
        let t = verify_jordan_osserman(&r, &g, Causal::Timelike, 50, 1).unwrap();
        assert_eq!(t.status, Status::NonConstant);
        let (a, b) = t.witness.unwrap();
        assert_eq!(a.vector, unit(6, 4));
        assert_eq!(a.partition.0, vec![1; 6]);
        assert!(b.partition.largest_block() == 3);
    }

    #[test]
    fn zero_tensor_is_constant_for_both_types() {
        let (_, g) = model(3, RatMatrix::identity(3));
        let z = CurvatureTensor::zero(9);
        for c in [Causal::Spacelike, Causal::Timelike] {
            let v = verify_jordan_osserman(&z, &g, c, 10, 0).unwrap();
            assert_eq!(v.status, Status::Constant);
            assert_eq!(v.partition.unwrap().0, vec![1; 9]);
            let n = nilpotency_report(&z, &g, c, 10, 0).unwrap();
            assert!(n.orders.iter().all(|&o| o == 1));
        }
    }

    #[test]
    fn nilpotency_orders() {
        let (r, g) = model(3, RatMatrix::identity(3));
        let n = nilpotency_report(&r, &g, Causal::Spacelike, 30, 5).unwrap();
        assert!(n.orders.iter().all(|&o| o == 3));
        assert_eq!(n.max_order, 3);
        let j = jacobi(&r, &g, &unit(9, 6)).unwrap().matrix;
        assert_eq!(rank_sequence(&j).unwrap().nilpotency_order(), 1);
    }

    #[test]
    fn non_nilpotent_reports_direction() {
        // Riemannian inner product with the round-sphere tensor: J(x) has
        // eigenvalue |x|^2 on x-perp.
        let g = InnerProduct::new(RatMatrix::identity(3)).unwrap();
        let r = constant_curvature_tensor(3);
        let err = verify_jordan_osserman(&r, &g, Causal::Spacelike, 5, 0).unwrap_err();
        match err {
            Error::NonNilpotent { direction } => assert_eq!(direction, vec!["1", "0", "0"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn verdicts_are_reproducible() {
        let (r, g) = model(3, RatMatrix::zeros(3, 3));
        let a = verify_jordan_osserman(&r, &g, Causal::Timelike, 40, 11).unwrap();
        let b = verify_jordan_osserman(&r, &g, Causal::Timelike, 40, 11).unwrap();
        assert_eq!(a, b);
    }
}
