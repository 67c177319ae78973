//! Algebraic curvature tensors on an inner-product space and their Jacobi
//! operators.
//!
//! Frame vectors are indexed in the fixed order `U_1..U_s, V_1..V_s, T_1..T_s`,
//! so `U_a = a`, `V_a = s + a`, `T_a = 2s + a` (zero-based `a`).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix, Signature};
use crate::scalar::Rational;

pub type Index4 = [usize; 4];

pub fn u_index(_s: usize, a: usize) -> usize {
    a
}

pub fn v_index(s: usize, a: usize) -> usize {
    s + a
}

pub fn t_index(s: usize, a: usize) -> usize {
    2 * s + a
}

/// Orbit of an index tuple under the symmetry group of a curvature tensor,
/// each paired with the sign relating its value to the original's.
fn orbit([a, b, c, d]: Index4) -> [(Index4, bool); 8] {
    // `true` means the value flips sign.
    [
        ([a, b, c, d], false),
        ([b, a, c, d], true),
        ([a, b, d, c], true),
        ([b, a, d, c], false),
        ([c, d, a, b], false),
        ([d, c, a, b], true),
        ([c, d, b, a], true),
        ([d, c, b, a], false),
    ]
}

/// Canonical representative (lexicographically smallest orbit member) and
/// whether the value flips sign on the way there.
pub fn canonical(idx: Index4) -> (Index4, bool) {
    orbit(idx)
        .into_iter()
        .min_by(|x, y| x.0.cmp(&y.0))
        .expect("orbit is nonempty")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Antisymmetry,
    PairSymmetry,
    FirstBianchi,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::Antisymmetry => "antisymmetry",
            Identity::PairSymmetry => "pair symmetry",
            Identity::FirstBianchi => "first Bianchi",
        };
        f.write_str(s)
    }
}

/// A violated identity with the index tuple that exhibits it and the nonzero
/// residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub identity: Identity,
    pub idx: Index4,
    pub residual: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: residual {}", self.identity, self.idx, self.residual)
    }
}

/// Degree-4 covariant tensor stored as one value per symmetry orbit.
#[derive(Clone, PartialEq, Eq)]
pub struct CurvatureTensor {
    dim: usize,
    entries: BTreeMap<Index4, Rational>,
    conflicts: Vec<Violation>,
}

impl CurvatureTensor {
    pub fn zero(dim: usize) -> Self {
        CurvatureTensor { dim, entries: BTreeMap::new(), conflicts: Vec::new() }
    }

    /// Builds a tensor from arbitrary (not necessarily canonical) entries.
    /// Two entries in one orbit that disagree are kept as antisymmetry or
    /// pair-symmetry violations and surface in [`validate_curvature_symmetries`].
    pub fn from_raw(dim: usize, raw: impl IntoIterator<Item = (Index4, Rational)>) -> Result<Self> {
        let mut t = CurvatureTensor::zero(dim);
        let mut seen: BTreeMap<Index4, (Index4, Rational)> = BTreeMap::new();
        for (idx, val) in raw {
            t.check_index(idx)?;
            let (key, flip) = canonical(idx);
            let implied = if flip { -&val } else { val };
            match seen.get(&key) {
                Some((first, prev)) => {
                    if *prev != implied {
                        let pair = orbit(*first)
                            .iter()
                            .position(|(i, _)| *i == idx)
                            .is_none_or(|p| p >= 4);
                        t.conflicts.push(Violation {
                            identity: if pair { Identity::PairSymmetry } else { Identity::Antisymmetry },
                            idx,
                            residual: &implied - prev,
                        });
                    }
                }
                None => {
                    seen.insert(key, (idx, implied.clone()));
                    if !implied.is_zero() {
                        t.entries.insert(key, implied);
                    }
                }
            }
        }
        Ok(t)
    }

    fn check_index(&self, idx: Index4) -> Result<()> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, got: bad + 1 });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, idx: Index4) -> Rational {
        let (key, flip) = canonical(idx);
        match self.entries.get(&key) {
            Some(v) if flip => -v,
            Some(v) => v.clone(),
            None => Rational::zero(),
        }
    }

    /// Sets `R(idx)` and, implicitly, every orbit partner.
    pub fn set(&mut self, idx: Index4, val: Rational) {
        self.check_index(idx).expect("tensor index out of range");
        let (key, flip) = canonical(idx);
        let val = if flip { -val } else { val };
        if val.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, val);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stored canonical representatives.
    pub fn canonical_entries(&self) -> impl Iterator<Item = (&Index4, &Rational)> {
        self.entries.iter()
    }

    /// Every index tuple with a nonzero value, orbit partners included.
    pub fn nonzero_entries(&self) -> Vec<(Index4, Rational)> {
        let mut out = BTreeMap::new();
        for (key, v) in &self.entries {
            for (idx, flip) in orbit(*key) {
                out.entry(idx).or_insert_with(|| if flip { -v } else { v.clone() });
            }
        }
        out.into_iter().collect()
    }

    pub fn add(&self, other: &CurvatureTensor) -> Result<CurvatureTensor> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut out = self.clone();
        for (k, v) in &other.entries {
            let cur = out.get(*k);
            out.set(*k, cur + v);
        }
        out.conflicts.extend(other.conflicts.iter().cloned());
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> CurvatureTensor {
        let mut out = CurvatureTensor::zero(self.dim);
        for (k, v) in &self.entries {
            out.set(*k, v * c);
        }
        out
    }
}

impl fmt::Debug for CurvatureTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurvatureTensor")
            .field("dim", &self.dim)
            .field("entries", &self.entries)
            .finish()
    }
}

/// Checks antisymmetry, pair symmetry and the first Bianchi identity.
/// Returns every violation found; an empty list means the tensor passes.
pub fn validate_curvature_symmetries(r: &CurvatureTensor) -> Vec<Violation> {
    let mut out = r.conflicts.clone();
    for (&[a, b, c, d], v) in &r.entries {
        if a == b || c == d {
            out.push(Violation { identity: Identity::Antisymmetry, idx: [a, b, c, d], residual: v.clone() });
        }
    }
    // With antisymmetry in the first pair the cyclic sum is alternating in
    // (x, y, z), so strictly increasing triples cover every case.
    let n = r.dim;
    for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                for w in 0..n {
                    let sum = r.get([x, y, z, w]) + r.get([y, z, x, w]) + r.get([z, x, y, w]);
                    if !sum.is_zero() {
                        out.push(Violation { identity: Identity::FirstBianchi, idx: [x, y, z, w], residual: sum });
                    }
                }
            }
        }
    }
    out
}

/// `R(x,y,z,w) = φ(x,w)φ(y,z) − φ(x,z)φ(y,w)` for a symmetric form `φ`.
pub fn gram_tensor(phi: &RatMatrix) -> Result<CurvatureTensor> {
    if !phi.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = phi.rows();
    let mut t = CurvatureTensor::zero(n);
    for a in 0..n {
        for b in (a + 1)..n {
            for c in 0..n {
                for d in (c + 1)..n {
                    if [a, b] > [c, d] {
                        continue;
                    }
                    let v = &phi[(a, d)] * &phi[(b, c)] - &phi[(a, c)] * &phi[(b, d)];
                    t.set([a, b, c, d], v);
                }
            }
        }
    }
    Ok(t)
}

/// Constant sectional curvature `+1` for the standard form on `R^s`:
/// `R(a,b,c,d) = δ_ad δ_bc − δ_ac δ_bd`.
pub fn constant_curvature_tensor(s: usize) -> CurvatureTensor {
    gram_tensor(&RatMatrix::identity(s)).expect("identity is symmetric")
}

/// A nondegenerate symmetric bilinear form on a fixed frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerProduct {
    gram: RatMatrix,
    gram_inverse: RatMatrix,
    u_block: Option<RatMatrix>,
}

impl InnerProduct {
    pub fn new(gram: RatMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let gram_inverse = linalg::inverse(&gram)?;
        Ok(InnerProduct { gram, gram_inverse, u_block: None })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &RatMatrix {
        &self.gram_inverse
    }

    /// The generating `g_ab` block, when built by [`model_inner_product`].
    pub fn u_block(&self) -> Option<&RatMatrix> {
        self.u_block.as_ref()
    }

    pub fn norm2(&self, x: &[Rational]) -> Result<Rational> {
        self.gram.bilinear(x, x)
    }

    pub fn signature(&self) -> Signature {
        linalg::sylvester_signature(&self.gram).expect("gram is symmetric")
    }
}

/// Inner product on `R^{3s}` with `g(U_a,U_b) = g_ab`, `g(U_a,V_b) = δ_ab`,
/// `g(T_a,T_b) = −δ_ab` and every other pairing zero. Signature `(2s, s)`.
pub fn model_inner_product(s: usize, g_ab: &RatMatrix) -> Result<InnerProduct> {
    if s < 2 {
        return Err(Error::InvalidInput(format!("model needs s >= 2, got {s}")));
    }
    if g_ab.rows() != s || g_ab.cols() != s {
        return Err(Error::DimensionMismatch { expected: s, got: g_ab.rows() });
    }
    if !g_ab.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut gram = RatMatrix::zeros(3 * s, 3 * s);
    for a in 0..s {
        for b in 0..s {
            gram[(a, b)] = g_ab[(a, b)].clone();
        }
        gram[(u_index(s, a), v_index(s, a))] = Rational::one();
        gram[(v_index(s, a), u_index(s, a))] = Rational::one();
        gram[(t_index(s, a), t_index(s, a))] = Rational::from(-1);
    }
    let mut ip = InnerProduct::new(gram)?;
    ip.u_block = Some(g_ab.clone());
    Ok(ip)
}

/// Curvature on `R^{3s}` whose nonzero entries are `R1` on the UUUU block and
/// `R2` on every pattern where exactly one `U` slot is replaced by the
/// matching `T`.
pub fn model_curvature(r1: &CurvatureTensor, r2: &CurvatureTensor) -> Result<CurvatureTensor> {
    if r1.dim() != r2.dim() {
        return Err(Error::DimensionMismatch { expected: r1.dim(), got: r2.dim() });
    }
    for (name, r) in [("R1", r1), ("R2", r2)] {
        let v = validate_curvature_symmetries(r);
        if let Some(first) = v.first() {
            return Err(Error::InvalidInput(format!("{name} is not a curvature tensor: {first}")));
        }
    }
    let s = r1.dim();
    let mut out = CurvatureTensor::zero(3 * s);
    for ([a, b, c, d], v) in r1.nonzero_entries() {
        out.set([a, b, c, d], v);
    }
    let t = |i| t_index(s, i);
    for ([a, b, c, d], v) in r2.nonzero_entries() {
        out.set([a, b, c, t(d)], v.clone());
        out.set([a, b, t(c), d], v.clone());
        out.set([a, t(b), c, d], v.clone());
        out.set([t(a), b, c, d], v);
    }
    Ok(out)
}

/// The operator `J(x)` defined by `g(J(x)y, z) = R(y, x, x, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiMatrix {
    pub direction: Vec<Rational>,
    pub matrix: RatMatrix,
}

/// Precomputed data for evaluating many Jacobi operators of one tensor.
#[derive(Debug, Clone)]
pub struct JacobiField {
    gram_inverse: RatMatrix,
    support: Vec<(Index4, Rational)>,
}

impl JacobiField {
    pub fn new(r: &CurvatureTensor, g: &InnerProduct) -> Result<Self> {
        if r.dim() != g.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), got: r.dim() });
        }
        Ok(JacobiField { gram_inverse: g.gram_inverse().clone(), support: r.nonzero_entries() })
    }

    pub fn dim(&self) -> usize {
        self.gram_inverse.rows()
    }

    /// The form `M_yz = R(y, x, x, z)`.
    pub fn jacobi_form(&self, x: &[Rational]) -> Result<RatMatrix> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        let mut m = RatMatrix::zeros(n, n);
        for ([y, b, c, z], v) in &self.support {
            if x[*b].is_zero() || x[*c].is_zero() {
                continue;
            }
            m[(*y, *z)] += &(&x[*b] * &x[*c]) * v;
        }
        Ok(m)
    }

    pub fn at(&self, x: &[Rational]) -> Result<JacobiMatrix> {
        let m = self.jacobi_form(x)?;
        let matrix = self.gram_inverse.mul(&m)?;
        Ok(JacobiMatrix { direction: x.to_vec(), matrix })
    }
}

pub fn jacobi(r: &CurvatureTensor, g: &InnerProduct, x: &[Rational]) -> Result<JacobiMatrix> {
    JacobiField::new(r, g)?.at(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn unit(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|k| if k == i { q(1) } else { q(0) }).collect()
    }

    fn basic_model(s: usize) -> (CurvatureTensor, InnerProduct) {
        let r = model_curvature(&CurvatureTensor::zero(s), &constant_curvature_tensor(s)).unwrap();
        let g = model_inner_product(s, &RatMatrix::identity(s)).unwrap();
        (r, g)
    }

    #[test]
    fn canonical_orbit_has_consistent_signs() {
        let t = {
            let mut t = CurvatureTensor::zero(4);
            t.set([2, 3, 0, 1], q(5));
            t
        };
        assert_eq!(t.get([0, 1, 2, 3]), q(5));
        assert_eq!(t.get([1, 0, 2, 3]), q(-5));
        assert_eq!(t.get([0, 1, 3, 2]), q(-5));
        assert_eq!(t.get([3, 2, 1, 0]), q(5));
        assert_eq!(t.canonical_entries().count(), 1);
        assert_eq!(t.nonzero_entries().len(), 8);
    }

    #[test]
    fn constant_curvature_examples() {
        let r = constant_curvature_tensor(2);
        assert_eq!(r.get([0, 1, 1, 0]), q(1));
        assert_eq!(r.get([0, 1, 0, 1]), q(-1));
        for c in 0..2 {
            for d in 0..2 {
                assert!(r.get([0, 0, c, d]).is_zero());
            }
        }
        for s in 1..=4 {
            assert!(validate_curvature_symmetries(&constant_curvature_tensor(s)).is_empty());
        }
    }

    #[test]
    fn gram_tensor_examples() {
        assert_eq!(gram_tensor(&RatMatrix::identity(3)).unwrap(), constant_curvature_tensor(3));
        assert!(gram_tensor(&RatMatrix::zeros(3, 3)).unwrap().is_zero());
        let phi = RatMatrix::diag(&[q(1), q(2)]);
        assert_eq!(gram_tensor(&phi).unwrap().get([0, 1, 1, 0]), q(2));
        let bad = RatMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        assert_eq!(gram_tensor(&bad), Err(Error::NotSymmetric));
    }

    #[test]
    fn model_inner_product_blocks() {
        let g = model_inner_product(2, &RatMatrix::zeros(2, 2)).unwrap();
        let gram = g.gram();
        assert_eq!(gram[(0, 2)], q(1));
        assert_eq!(gram[(4, 4)], q(-1));
        assert_eq!(gram[(0, 0)], q(0));
        assert_eq!(g.signature(), Signature::new(4, 2, 0));
        let g3 = model_inner_product(3, &RatMatrix::identity(3)).unwrap();
        assert_eq!(g3.dim(), 9);
        assert_eq!(g3.signature(), Signature::new(6, 3, 0));
        assert_eq!(
            model_inner_product(2, &RatMatrix::from_i64(&[&[0, 1], &[2, 0]])),
            Err(Error::NotSymmetric)
        );
        assert!(model_inner_product(1, &RatMatrix::zeros(1, 1)).is_err());
    }

    #[test]
    fn model_curvature_examples() {
        let r = model_curvature(&CurvatureTensor::zero(2), &constant_curvature_tensor(2)).unwrap();
        // R(U_1, U_2, U_2, T_1)
        assert_eq!(r.get([0, 1, 1, 4]), q(1));
        // any entry with two T slots vanishes
        for ([a, b, c, d], _) in r.nonzero_entries() {
            let ts = [a, b, c, d].iter().filter(|&&i| i >= 4).count();
            assert_eq!(ts, 1);
        }
        assert!(validate_curvature_symmetries(&r).is_empty());
        let z = model_curvature(&CurvatureTensor::zero(2), &CurvatureTensor::zero(2)).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn model_curvature_rejects_invalid_inputs() {
        let mut bad = CurvatureTensor::zero(4);
        bad.set([0, 1, 2, 3], q(1));
        let err = model_curvature(&bad, &CurvatureTensor::zero(4)).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn lone_entry_violates_bianchi() {
        let mut t = CurvatureTensor::zero(4);
        t.set([0, 1, 2, 3], q(1));
        let v = validate_curvature_symmetries(&t);
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| x.identity == Identity::FirstBianchi));
    }

    #[test]
    fn raw_conflicts_are_reported() {
        let raw = vec![([0, 1, 0, 1], q(1)), ([1, 0, 0, 1], q(1))];
        let t = CurvatureTensor::from_raw(2, raw).unwrap();
        let v = validate_curvature_symmetries(&t);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].identity, Identity::Antisymmetry);

        let raw = vec![([0, 1, 2, 3], q(1)), ([2, 3, 0, 1], q(2))];
        let t = CurvatureTensor::from_raw(4, raw).unwrap();
        let v = validate_curvature_symmetries(&t);
        assert!(v.iter().any(|x| x.identity == Identity::PairSymmetry));

        let raw = vec![([0, 0, 1, 1], q(3))];
        let t = CurvatureTensor::from_raw(2, raw).unwrap();
        assert_eq!(validate_curvature_symmetries(&t)[0].identity, Identity::Antisymmetry);
    }

    #[test]
    fn jacobi_along_u1_matches_hand_expansion() {
        // Expected action: U_2 -> -T_2, T_2 -> V_2, everything else -> 0.
        let (r, g) = basic_model(2);
        let j = jacobi(&r, &g, &unit(6, 0)).unwrap().matrix;
        let mut expected = RatMatrix::zeros(6, 6);
        expected[(5, 1)] = q(-1);
        expected[(3, 5)] = q(1);
        assert_eq!(j, expected);
        assert_eq!(linalg::rank(&j), 2);
        let ker = linalg::kernel_basis(&j);
        assert_eq!(ker.len(), 4);
        let span_check = RatMatrix::from_rows(ker).unwrap();
        // kernel = span{U_1, V_1, V_2, T_1}
        for i in [0, 2, 3, 4] {
            let mut with = span_check.clone().transpose();
            let e = RatMatrix::column(&unit(6, i));
            with = RatMatrix::from_fn(6, 5, |r, c| if c < 4 { with[(r, c)].clone() } else { e[(r, 0)].clone() });
            assert_eq!(linalg::rank(&with), 4, "frame vector {i} not in kernel");
        }
    }

    #[test]
    fn jacobi_vanishes_along_t1_and_v1() {
        let (r, g) = basic_model(2);
        assert!(jacobi(&r, &g, &unit(6, 4)).unwrap().matrix.is_zero());
        assert!(jacobi(&r, &g, &unit(6, 2)).unwrap().matrix.is_zero());
    }

    #[test]
    fn jacobi_is_self_adjoint_and_kills_direction() {
        let s = 3;
        let phi = RatMatrix::from_i64(&[&[2, 1, 0], &[1, -1, 3], &[0, 3, 1]]);
        let r1 = gram_tensor(&phi).unwrap();
        let r = model_curvature(&r1, &constant_curvature_tensor(s)).unwrap();
        let g = model_inner_product(s, &RatMatrix::from_i64(&[&[1, 2, 0], &[2, 0, 1], &[0, 1, -3]])).unwrap();
        let x: Vec<Rational> = [1, -2, 3, 0, 5, -1, 2, 2, -4].iter().map(|&v| q(v)).collect();
        let j = jacobi(&r, &g, &x).unwrap().matrix;
        assert!(g.gram().mul(&j).unwrap().is_symmetric());
        assert!(j.mul_vec(&x).unwrap().iter().all(Rational::is_zero));
        let j3 = j.mul(&j).unwrap().mul(&j).unwrap();
        assert!(j3.is_zero());
        let lam = Rational::new(-3, 2);
        let scaled: Vec<Rational> = x.iter().map(|v| v * &lam).collect();
        let js = jacobi(&r, &g, &scaled).unwrap().matrix;
        assert_eq!(js, j.scale(&(&lam * &lam)));
    }

    #[test]
    fn jacobi_checks_dimensions() {
        let (r, _) = basic_model(2);
        let g3 = model_inner_product(3, &RatMatrix::identity(3)).unwrap();
        assert!(matches!(jacobi(&r, &g3, &unit(9, 0)), Err(Error::DimensionMismatch { .. })));
    }
}
