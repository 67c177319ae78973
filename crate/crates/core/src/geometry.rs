//! Polynomial pseudo-Riemannian metrics and exact pointwise curvature.
//!
//! Christoffel symbols of the first kind are polynomials and are kept
//! symbolic. Anything that needs the inverse metric (raised symbols, the
//! quadratic part of the curvature) is evaluated at a base point with exact
//! rationals, so no rational-function algebra is required.
//!
//! Conventions: `Γ_{ijk} = g(∇_{e_i} e_j, e_k)` and
//! `R_{ijkl} = g(R(e_i, e_j) e_k, e_l)` with `R(x,y) = ∇_x∇_y − ∇_y∇_x − ∇_{[x,y]}`,
//! which gives the round sphere `R(x,y,y,x) > 0` and matches the Jacobi
//! operator `g(J(x)y, z) = R(y, x, x, z)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::{validate_curvature_symmetries, CurvatureTensor, Index4, InnerProduct, Violation};
use crate::error::{Error, Result};
use crate::jordan::Site;
use crate::linalg::{self, RatMatrix, Signature};
use crate::poly::{Block, Chart, Coord, Polynomial};
use crate::scalar::Rational;

/// Symmetric matrix of polynomials on a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMetric {
    chart: Chart,
    entries: Vec<Polynomial>,
}

impl PolynomialMetric {
    pub fn new(chart: Chart, entries: Vec<Polynomial>) -> Result<Self> {
        let n = chart.dim();
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        if let Some(p) = entries.iter().find(|p| p.chart() != chart) {
            return Err(Error::ChartMismatch { left: chart.s(), right: p.chart().s() });
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(PolynomialMetric { chart, entries })
    }

    /// Builds a metric from upper-triangle entries `(i, j, g_ij)`, `i <= j`;
    /// omitted entries are zero.
    pub fn from_upper(chart: Chart, upper: impl IntoIterator<Item = (usize, usize, Polynomial)>) -> Result<Self> {
        let n = chart.dim();
        let mut entries = vec![Polynomial::zero(chart); n * n];
        for (i, j, p) in upper {
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch { expected: n, got: i.max(j) + 1 });
            }
            if i > j {
                return Err(Error::InvalidInput(format!("entry ({i},{j}) is below the diagonal")));
            }
            if p.chart() != chart {
                return Err(Error::ChartMismatch { left: chart.s(), right: p.chart().s() });
            }
            let sum = &entries[i * n + j] + &p;
            entries[i * n + j] = sum.clone();
            entries[j * n + i] = sum;
        }
        Ok(PolynomialMetric { chart, entries })
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.dim() + j]
    }

    /// Nonzero upper-triangle entries in row-major order.
    pub fn upper_entries(&self) -> Vec<(usize, usize, &Polynomial)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.get(i, j)))
            .filter(|(_, _, p)| !p.is_zero())
            .collect()
    }

    pub fn gram_at(&self, point: &[Rational]) -> Result<RatMatrix> {
        let n = self.dim();
        if point.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: point.len() });
        }
        let vals = self.entries.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>()?;
        Ok(RatMatrix::from_fn(n, n, |i, j| vals[i * n + j].clone()))
    }

    /// Replaces one entry and its mirror.
    pub fn with_entry(&self, i: usize, j: usize, p: Polynomial) -> Result<Self> {
        let n = self.dim();
        if i >= n || j >= n {
            return Err(Error::DimensionMismatch { expected: n, got: i.max(j) + 1 });
        }
        let mut out = self.clone();
        out.entries[i * n + j] = p.clone();
        out.entries[j * n + i] = p;
        Ok(out)
    }
}

/// `ψ_{abcd} = −2/3 (R_{acdb} + R_{adcb})`, symmetric in `(a, b)`.
fn psi(r2: &CurvatureTensor) -> impl Fn(usize, usize, usize, usize) -> Rational + '_ {
    let k = Rational::new(-2, 3);
    move |a, b, c, d| &k * &(r2.get([a, c, d, b]) + r2.get([a, d, c, b]))
}

fn check_r2(r2: &CurvatureTensor) -> Result<()> {
    if let Some(v) = validate_curvature_symmetries(r2).first() {
        return Err(Error::InvalidInput(format!("R2 is not a curvature tensor: {v}")));
    }
    Ok(())
}

/// Metric with `g(U_a,U_b) = ψ_{abcd} u_c t_d`, `g(U_a,V_b) = δ_ab`,
/// `g(T_a,T_b) = −δ_ab`, whose curvature carries `r2` on the one-`T` block.
pub fn realizing_metric(s: usize, r2: &CurvatureTensor) -> Result<PolynomialMetric> {
    if r2.dim() != s {
        return Err(Error::DimensionMismatch { expected: s, got: r2.dim() });
    }
    check_r2(r2)?;
    let chart = Chart::new(s)?;
    let psi = psi(r2);
    let mut upper = Vec::new();
    for a in 0..s {
        for b in a..s {
            let mut p = Polynomial::zero(chart);
            for c in 0..s {
                for d in 0..s {
                    let coeff = psi(a, b, c, d);
                    if !coeff.is_zero() {
                        p = &p + &Polynomial::monomial(chart, coeff, &[Coord::u(c), Coord::t(d)])?;
                    }
                }
            }
            upper.push((a, b, p));
        }
    }
    push_frame_pairs(chart, &mut upper)?;
    PolynomialMetric::from_upper(chart, upper)
}

fn push_frame_pairs(chart: Chart, upper: &mut Vec<(usize, usize, Polynomial)>) -> Result<()> {
    let s = chart.s();
    for a in 0..s {
        upper.push((a, s + a, Polynomial::constant(chart, Rational::one())));
        upper.push((2 * s + a, 2 * s + a, Polynomial::constant(chart, Rational::from(-1))));
    }
    Ok(())
}

/// The signature `(4, 2)` example on `R^6`: `g(U_1,U_1) = −2u_2t_2`,
/// `g(U_2,U_2) = −2u_1t_1`, `g(U_1,U_2) = u_1u_2`, plus the frame pairings.
pub fn example_metric() -> PolynomialMetric {
    let chart = Chart::new(2).expect("s = 2");
    let m = |c: i64, coords: &[Coord]| Polynomial::monomial(chart, Rational::from(c), coords).expect("in chart");
    let mut upper = vec![
        (0, 0, m(-2, &[Coord::u(1), Coord::t(1)])),
        (1, 1, m(-2, &[Coord::u(0), Coord::t(0)])),
        (0, 1, m(1, &[Coord::u(0), Coord::u(1)])),
    ];
    push_frame_pairs(chart, &mut upper).expect("frame pairs");
    PolynomialMetric::from_upper(chart, upper).expect("well formed")
}

/// `Γ_{ijk}` as polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChristoffelFirstKind {
    chart: Chart,
    symbols: Vec<Polynomial>,
}

impl ChristoffelFirstKind {
    fn zeros(chart: Chart) -> Self {
        let n = chart.dim();
        ChristoffelFirstKind { chart, symbols: vec![Polynomial::zero(chart); n * n * n] }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Polynomial {
        let n = self.chart.dim();
        &self.symbols[(i * n + j) * n + k]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, p: Polynomial) {
        let n = self.chart.dim();
        self.symbols[(i * n + j) * n + k] = p;
    }

    /// Index triples where the two symbol sets disagree.
    pub fn mismatches(&self, other: &ChristoffelFirstKind) -> Vec<[usize; 3]> {
        let n = self.chart.dim();
        if self.chart != other.chart {
            return vec![[n, n, n]];
        }
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.get(i, j, k) != other.get(i, j, k) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }
}

/// Levi-Civita symbols `Γ_{ijk} = ½(∂_i g_jk + ∂_j g_ik − ∂_k g_ij)`.
pub fn christoffel_first(metric: &PolynomialMetric) -> ChristoffelFirstKind {
    let chart = metric.chart();
    let n = chart.dim();
    // dg[(k * n + i) * n + j] = ∂_k g_ij
    let mut dg = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                dg.push(metric.get(i, j).partial_index(k));
            }
        }
    }
    let d = |k: usize, i: usize, j: usize| &dg[(k * n + i) * n + j];
    let half = Rational::new(1, 2);
    let mut out = ChristoffelFirstKind::zeros(chart);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let sum = &(d(i, j, k) + d(j, i, k)) - d(k, i, j);
                out.set(i, j, k, sum.scale(&half));
            }
        }
    }
    out
}

/// Closed-form symbols for [`realizing_metric`], written directly from `ψ`
/// without differentiating the metric:
///
/// * `Γ_{abc} = ½(ψ_{bcai} + ψ_{acbi} − ψ_{abci}) t_i`
/// * `Γ_{iab} = Γ_{aib} = −Γ_{abi} = ½ ψ_{abci} u_c`
///
/// with `a, b, c` in the U block and `i` in the T block; all others vanish.
pub fn realizing_christoffel_closed_form(s: usize, r2: &CurvatureTensor) -> Result<ChristoffelFirstKind> {
    if r2.dim() != s {
        return Err(Error::DimensionMismatch { expected: s, got: r2.dim() });
    }
    check_r2(r2)?;
    let chart = Chart::new(s)?;
    let psi = psi(r2);
    let half = Rational::new(1, 2);
    let t = |i| 2 * s + i;
    let mut out = ChristoffelFirstKind::zeros(chart);
    for a in 0..s {
        for b in 0..s {
            for c in 0..s {
                let mut p = Polynomial::zero(chart);
                for i in 0..s {
                    let coeff = &half * &(psi(b, c, a, i) + psi(a, c, b, i) - psi(a, b, c, i));
                    p = &p + &Polynomial::monomial(chart, coeff, &[Coord::t(i)])?;
                }
                out.set(a, b, c, p);
            }
            for i in 0..s {
                let mut p = Polynomial::zero(chart);
                for c in 0..s {
                    let coeff = &half * &psi(a, b, c, i);
                    p = &p + &Polynomial::monomial(chart, coeff, &[Coord::u(c)])?;
                }
                out.set(t(i), a, b, p.clone());
                out.set(a, t(i), b, p.clone());
                out.set(a, b, t(i), -&p);
            }
        }
    }
    Ok(out)
}

/// Symbolic data shared by every pointwise curvature evaluation of a metric.
#[derive(Debug, Clone)]
pub struct CurvatureField {
    metric: PolynomialMetric,
    gamma: ChristoffelFirstKind,
    /// `∂_i Γ_{jkl}` at flat index `((i n + j) n + k) n + l`.
    dgamma: Vec<Polynomial>,
}

/// Exact values of the symbols and their derivatives at one point.
#[derive(Debug, Clone)]
pub struct PointData {
    pub point: Vec<Rational>,
    pub gram: RatMatrix,
    pub lowered: Vec<Rational>,
    pub raised: Vec<Rational>,
    pub dgamma: Vec<Rational>,
    n: usize,
}

impl PointData {
    /// `Γ_{ijk}`
    pub fn lowered(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.lowered[(i * self.n + j) * self.n + k]
    }

    /// `Γ_{ij}^k`
    pub fn raised(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.raised[(i * self.n + j) * self.n + k]
    }

    fn dgamma(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        let n = self.n;
        &self.dgamma[((i * n + j) * n + k) * n + l]
    }

    /// `∂_i Γ_{jkl} − ∂_j Γ_{ikl} − Γ_{jk}^m Γ_{ilm} + Γ_{ik}^m Γ_{jlm}`,
    /// summing `m` over `range`.
    fn riemann(&self, [i, j, k, l]: Index4, range: impl Iterator<Item = usize> + Clone) -> Rational {
        let mut r = self.dgamma(i, j, k, l) - self.dgamma(j, i, k, l);
        for m in range {
            let a = self.raised(j, k, m);
            if !a.is_zero() {
                r -= a * self.lowered(i, l, m);
            }
            let b = self.raised(i, k, m);
            if !b.is_zero() {
                r += b * self.lowered(j, l, m);
            }
        }
        r
    }
}

impl CurvatureField {
    pub fn new(metric: &PolynomialMetric) -> Self {
        let gamma = christoffel_first(metric);
        let n = metric.dim();
        let mut dgamma = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        dgamma.push(gamma.get(j, k, l).partial_index(i));
                    }
                }
            }
        }
        CurvatureField { metric: metric.clone(), gamma, dgamma }
    }

    pub fn metric(&self) -> &PolynomialMetric {
        &self.metric
    }

    pub fn christoffel(&self) -> &ChristoffelFirstKind {
        &self.gamma
    }

    pub fn point_data(&self, point: &[Rational]) -> Result<PointData> {
        let n = self.metric.dim();
        let gram = self.metric.gram_at(point)?;
        let inv = match linalg::inverse(&gram) {
            Ok(inv) => inv,
            Err(Error::SingularMatrix) => return Err(Error::DegenerateMetric),
            Err(e) => return Err(e),
        };
        let lowered = self.gamma.symbols.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>()?;
        let mut raised = vec![Rational::zero(); n * n * n];
        for ij in 0..n * n {
            let row = &lowered[ij * n..(ij + 1) * n];
            let up = inv.mul_vec(row)?;
            raised[ij * n..(ij + 1) * n].clone_from_slice(&up);
        }
        let dgamma = self.dgamma.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>()?;
        Ok(PointData { point: point.to_vec(), gram, lowered, raised, dgamma, n })
    }

    pub fn at(&self, point: &[Rational]) -> Result<CurvatureAtPoint> {
        let data = self.point_data(point)?;
        let n = data.n;
        let mut raw = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        raw.push(([i, j, k, l], data.riemann([i, j, k, l], 0..n)));
                    }
                }
            }
        }
        let tensor = CurvatureTensor::from_raw(n, raw)?;
        Ok(CurvatureAtPoint { point: data.point, tensor, gram: data.gram })
    }
}

/// Covariant curvature and Gram matrix at one base point.
#[derive(Debug, Clone)]
pub struct CurvatureAtPoint {
    pub point: Vec<Rational>,
    pub tensor: CurvatureTensor,
    pub gram: RatMatrix,
}

impl CurvatureAtPoint {
    pub fn inner_product(&self) -> Result<InnerProduct> {
        InnerProduct::new(self.gram.clone())
    }

    /// Tangent space at this point, ready for Jordan sampling.
    pub fn site(&self) -> Result<Site> {
        Site::at_point(&self.tensor, &self.inner_product()?, self.point.clone())
    }

    /// The UUUU block as a tensor on `R^s`.
    pub fn uuuu_block(&self, s: usize) -> CurvatureTensor {
        let mut out = CurvatureTensor::zero(s);
        for a in 0..s {
            for b in 0..s {
                for c in 0..s {
                    for d in 0..s {
                        out.set([a, b, c, d], self.tensor.get([a, b, c, d]));
                    }
                }
            }
        }
        out
    }
}

pub fn curvature_at(metric: &PolynomialMetric, point: &[Rational]) -> Result<CurvatureAtPoint> {
    CurvatureField::new(metric).at(point)
}

pub fn metric_signature_at(metric: &PolynomialMetric, point: &[Rational]) -> Result<Signature> {
    linalg::sylvester_signature(&metric.gram_at(point)?)
}

/// A curvature component that does not have the value the model requires.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Mismatch {
    pub idx: Index4,
    pub expected: Rational,
    pub got: Rational,
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub mismatches: Vec<Mismatch>,
    pub symmetry_violations: Vec<Violation>,
    /// UUUU block at the point; itself a curvature tensor on `R^s`.
    pub r1: CurvatureTensor,
    pub r1_violations: Vec<Violation>,
}

impl Realization {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.symmetry_violations.is_empty() && self.r1_violations.is_empty()
    }
}

/// Compares the curvature at `point` with the model pattern: zero unless
/// all slots are U (free; extracted as `r1`) or exactly one slot is T, in
/// which case it must equal `r2` with that T read as the matching U.
pub fn realize_check(metric: &PolynomialMetric, r2: &CurvatureTensor, point: &[Rational]) -> Result<Realization> {
    let here = curvature_at(metric, point)?;
    Ok(compare_with_model(&here, metric.chart(), r2))
}

pub fn compare_with_model(here: &CurvatureAtPoint, chart: Chart, r2: &CurvatureTensor) -> Realization {
    let s = chart.s();
    let n = chart.dim();
    let mut mismatches = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let idx = [i, j, k, l];
                    let blocks = idx.map(|x| chart.block_of(x));
                    let vs = blocks.iter().filter(|&&b| b == Block::V).count();
                    let ts = blocks.iter().filter(|&&b| b == Block::T).count();
                    if vs == 0 && ts == 0 {
                        continue;
                    }
                    let expected = if vs == 0 && ts == 1 && r2.dim() == s {
                        r2.get(idx.map(|x| x % s))
                    } else {
                        Rational::zero()
                    };
                    let got = here.tensor.get(idx);
                    if got != expected {
                        mismatches.push(Mismatch { idx, expected, got });
                    }
                }
            }
        }
    }
    let r1 = here.uuuu_block(s);
    Realization {
        mismatches,
        symmetry_violations: validate_curvature_symmetries(&here.tensor),
        r1_violations: validate_curvature_symmetries(&r1),
        r1,
    }
}

/// Raised-symbol relations for metrics with `g_UV = I`, `g_TT = −I`:
/// `Γ_{jk}^a = 0`, `Γ_{jk}^{T_i} = −Γ_{jk T_i}`, `Γ_{jk}^{V_a} = Γ_{jk U_a}`.
/// Returns the `(j, k, m)` triples that break them.
pub fn raised_index_violations(data: &PointData, chart: Chart) -> Vec<[usize; 3]> {
    let s = chart.s();
    let n = chart.dim();
    let mut out = Vec::new();
    for j in 0..n {
        for k in 0..n {
            for m in 0..n {
                let up = data.raised(j, k, m);
                let ok = match chart.block_of(m) {
                    Block::U => up.is_zero(),
                    Block::T => *up == -data.lowered(j, k, m),
                    Block::V => up == data.lowered(j, k, m - s),
                };
                if !ok {
                    out.push([j, k, m]);
                }
            }
        }
    }
    out
}

/// Curvature with the quadratic sum restricted to the T block and written
/// with the summed index in the middle slot:
/// `∂_i Γ_{jkl} − ∂_j Γ_{ikl} + Γ_{i m l} Γ_{jk}^m − Γ_{j m l} Γ_{ik}^m`, `m ∈ T`.
/// Returns the components where it differs from the full formula.
pub fn reduced_formula_mismatches(field: &CurvatureField, data: &PointData) -> Vec<Index4> {
    let chart = field.metric.chart();
    let n = chart.dim();
    let ts: Vec<usize> = (0..n).filter(|&m| chart.block_of(m) == Block::T).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut reduced = data.dgamma(i, j, k, l) - data.dgamma(j, i, k, l);
                    for &m in &ts {
                        reduced += data.lowered(i, m, l) * data.raised(j, k, m);
                        reduced -= data.lowered(j, m, l) * data.raised(i, k, m);
                    }
                    if reduced != data.riemann([i, j, k, l], 0..n) {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    out
}

/// Seeded integer base point with coordinates in `[-bound, bound]`. The seed
/// is mixed so base points never share a stream with direction sampling.
pub fn random_point(chart: Chart, seed: u64, index: u64, bound: i64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    rng.set_stream(index);
    (0..chart.dim()).map(|_| Rational::from(rng.gen_range(-bound..=bound))).collect()
}

pub const DEFAULT_POINT_BOUND: i64 = 5;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{constant_curvature_tensor, gram_tensor};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn flat(s: usize) -> PolynomialMetric {
        let chart = Chart::new(s).unwrap();
        let mut upper = Vec::new();
        push_frame_pairs(chart, &mut upper).unwrap();
        upper.push((0, 0, Polynomial::constant(chart, q(3))));
        PolynomialMetric::from_upper(chart, upper).unwrap()
    }

    #[test]
    fn realizing_metric_entries() {
        let g = realizing_metric(2, &constant_curvature_tensor(2)).unwrap();
        let ch = g.chart();
        let expect11 = Polynomial::monomial(ch, Rational::new(-4, 3), &[Coord::u(1), Coord::t(1)]).unwrap();
        assert_eq!(g.get(0, 0), &expect11);
        let expect12 = &Polynomial::monomial(ch, Rational::new(2, 3), &[Coord::u(1), Coord::t(0)]).unwrap()
            + &Polynomial::monomial(ch, Rational::new(2, 3), &[Coord::u(0), Coord::t(1)]).unwrap();
        assert_eq!(g.get(0, 1), &expect12);
        assert_eq!(g.get(1, 0), &expect12);
        assert_eq!(g.get(0, 2), &Polynomial::constant(ch, q(1)));
        assert_eq!(g.get(5, 5), &Polynomial::constant(ch, q(-1)));
        assert!(g.get(2, 2).is_zero());
        // R2 = 0 gives a constant-coefficient metric
        let z = realizing_metric(2, &CurvatureTensor::zero(2)).unwrap();
        assert!((0..6).all(|i| (0..6).all(|j| z.get(i, j).degree().unwrap_or(0) == 0)));
    }

    #[test]
    fn realizing_metric_rejects_bad_r2() {
        let mut bad = CurvatureTensor::zero(4);
        bad.set([0, 1, 2, 3], q(1));
        assert!(matches!(realizing_metric(4, &bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn example_metric_entries() {
        let g = example_metric();
        let ch = g.chart();
        assert_eq!(g.get(0, 0), &Polynomial::monomial(ch, q(-2), &[Coord::u(1), Coord::t(1)]).unwrap());
        assert_eq!(g.get(0, 1), &Polynomial::monomial(ch, q(1), &[Coord::u(0), Coord::u(1)]).unwrap());
        assert_eq!(g.get(0, 2), &Polynomial::constant(ch, q(1)));
        assert!(g.get(2, 2).is_zero());
        assert_eq!(g.upper_entries().len(), 7);
    }

    #[test]
    fn lemma_entries_do_not_depend_on_v() {
        let g = realizing_metric(3, &constant_curvature_tensor(3)).unwrap();
        for (i, j, p) in g.upper_entries() {
            assert!(p.partial(Coord::v(0)).unwrap().is_zero(), "entry ({i},{j})");
        }
    }

    #[test]
    fn christoffel_examples() {
        let f = christoffel_first(&flat(2));
        assert!(f.symbols.iter().all(Polynomial::is_zero));

        let g = realizing_metric(2, &constant_curvature_tensor(2)).unwrap();
        let gamma = christoffel_first(&g);
        let ch = g.chart();
        // Γ_{U_1 U_1 T_2}
        assert_eq!(
            gamma.get(0, 0, 5),
            &Polynomial::monomial(ch, Rational::new(2, 3), &[Coord::u(1)]).unwrap()
        );
        for i in 2..4 {
            for j in 2..4 {
                for k in 2..4 {
                    assert!(gamma.get(i, j, k).is_zero());
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_derivatives() {
        for s in [2, 3] {
            let r2 = constant_curvature_tensor(s);
            let a = christoffel_first(&realizing_metric(s, &r2).unwrap());
            let b = realizing_christoffel_closed_form(s, &r2).unwrap();
            assert!(a.mismatches(&b).is_empty(), "s = {s}");
        }
        let phi = RatMatrix::from_i64(&[&[1, 2], &[2, -3]]);
        let r2 = gram_tensor(&phi).unwrap();
        let a = christoffel_first(&realizing_metric(2, &r2).unwrap());
        let b = realizing_christoffel_closed_form(2, &r2).unwrap();
        assert!(a.mismatches(&b).is_empty());
    }

    #[test]
    fn closed_form_block_structure() {
        let s = 2;
        let b = realizing_christoffel_closed_form(s, &constant_curvature_tensor(s)).unwrap();
        for a in 0..s {
            for bb in 0..s {
                for c in 0..s {
                    assert!(b.get(a, bb, c).is_homogeneous_in(Block::T, 1) || b.get(a, bb, c).is_zero());
                }
                for i in 0..s {
                    let p = b.get(a, bb, 2 * s + i);
                    assert!(p.is_homogeneous_in(Block::U, 1) || p.is_zero());
                }
            }
        }
    }

    #[test]
    fn flat_metric_has_zero_curvature() {
        let c = curvature_at(&flat(2), &pt(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert!(c.tensor.is_zero());
    }

    #[test]
    fn sign_convention_pins_one_t_block() {
        let g = realizing_metric(2, &constant_curvature_tensor(2)).unwrap();
        for p in [pt(&[0, 0, 0, 0, 0, 0]), pt(&[1, -2, 3, 0, 2, 5]), pt(&[-4, 1, 1, 1, -3, 2])] {
            let c = curvature_at(&g, &p).unwrap();
            // R(U_2, U_1, U_1, T_2)
            assert_eq!(c.tensor.get([1, 0, 0, 5]), q(1));
            assert!(validate_curvature_symmetries(&c.tensor).is_empty());
        }
    }

    #[test]
    fn lemma_sparsity_pattern() {
        let g = realizing_metric(2, &constant_curvature_tensor(2)).unwrap();
        let c = curvature_at(&g, &pt(&[2, -1, 0, 3, 1, 4])).unwrap();
        for ([a, b, cc, d], _) in c.tensor.nonzero_entries() {
            let others = [a, b, cc, d].iter().filter(|&&x| x >= 2).count();
            let ts = [a, b, cc, d].iter().filter(|&&x| x >= 4).count();
            assert!(others == 0 || (others == 1 && ts == 1));
        }
    }

    #[test]
    fn realize_check_passes_and_fails() {
        let r2 = constant_curvature_tensor(2);
        let g = realizing_metric(2, &r2).unwrap();
        let ok = realize_check(&g, &r2, &pt(&[1, 2, 3, -1, -2, 4])).unwrap();
        assert!(ok.passed(), "{:?}", ok.mismatches);
        let bad = realize_check(&flat(2), &r2, &pt(&[1, 2, 3, -1, -2, 4])).unwrap();
        assert!(!bad.passed());
        assert!(bad.mismatches.iter().all(|m| m.got.is_zero()));
    }

    #[test]
    fn degenerate_metric_is_reported() {
        let chart = Chart::new(2).unwrap();
        let g = PolynomialMetric::from_upper(chart, vec![(0, 0, Polynomial::var(chart, Coord::u(0)).unwrap())]).unwrap();
        assert!(matches!(curvature_at(&g, &pt(&[1, 0, 0, 0, 0, 0])), Err(Error::DegenerateMetric)));
    }

    #[test]
    fn signature_examples() {
        let g = example_metric();
        assert_eq!(metric_signature_at(&g, &pt(&[0; 6])).unwrap(), Signature::new(4, 2, 0));
        assert_eq!(metric_signature_at(&g, &pt(&[3, -2, 1, 1, 5, 0])).unwrap(), Signature::new(4, 2, 0));
        let g3 = realizing_metric(3, &constant_curvature_tensor(3)).unwrap();
        for k in 0..5 {
            let p = random_point(g3.chart(), 1, k, 5);
            assert_eq!(metric_signature_at(&g3, &p).unwrap(), Signature::new(6, 3, 0));
        }
    }

    #[test]
    fn asymmetric_metric_rejected() {
        let chart = Chart::new(2).unwrap();
        let mut entries = vec![Polynomial::zero(chart); 36];
        entries[1] = Polynomial::constant(chart, q(1));
        assert_eq!(PolynomialMetric::new(chart, entries), Err(Error::NotSymmetric));
    }
}
