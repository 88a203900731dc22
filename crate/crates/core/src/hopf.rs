//! Hopf algebra structure over a structure-constant algebra: comultiplication, counit,
//! antipode, integrals, semisimplicity and the dual Hopf algebra.

use std::sync::Arc;

use crate::algebra::{group_algebra, validate_algebra, Algebra, CayleyTable};
use crate::linalg::{is_zero_vec, unit_vec, zero_vec, FieldSpec, Matrix, Scalar};
use crate::{Certificate, Error, Violation};

/// Δ(e_i) = Σ d[i][j][k] e_j ⊗ e_k. The antipode matrix has S(e_i) as its i-th column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    algebra: Arc<Algebra>,
    comul: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
    antipode: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// The integral line of a finite-dimensional Hopf algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralSpace {
    pub side: Side,
    /// A spanning integral, as a coefficient vector.
    pub basis: Vec<Scalar>,
    /// The integral t on the line with ε(t) = 1, when ε does not vanish there.
    pub normalized: Option<Vec<Scalar>>,
}

impl HopfAlgebra {
    pub fn new(
        algebra: Arc<Algebra>,
        comul: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self, Error> {
        let n = algebra.dim();
        if counit.len() != n {
            return Err(Error::MalformedHopf("counit length differs from dimension".into()));
        }
        if antipode.shape() != (n, n) {
            return Err(Error::MalformedHopf("antipode must be dim×dim".into()));
        }
        let mut dense = vec![Matrix::zeros(algebra.field(), n, n); n];
        for (i, j, k, c) in comul {
            if i >= n || j >= n || k >= n {
                return Err(Error::MalformedHopf(format!("comultiplication index ({i},{j},{k}) out of range")));
            }
            dense[i].entry_mut(j, k).add_assign_ref(&c);
        }
        let comul = dense
            .into_iter()
            .map(|m| {
                let mut terms = Vec::new();
                for j in 0..n {
                    for k in 0..n {
                        if !m.get(j, k).is_zero() {
                            terms.push((j, k, m.get(j, k).clone()));
                        }
                    }
                }
                terms
            })
            .collect();
        Ok(HopfAlgebra { algebra, comul, counit, antipode })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    /// Sparse Δ(e_i).
    pub fn coproduct_of_basis(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.comul[i]
    }

    /// All comultiplication constants as (i, j, k, c).
    pub fn comul_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        self.comul
            .iter()
            .enumerate()
            .flat_map(|(i, terms)| terms.iter().map(move |(j, k, c)| (i, *j, *k, c)))
    }

    /// Δ(x) as a dim×dim coefficient table: entry (j, k) multiplies e_j ⊗ e_k.
    pub fn coproduct(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(self.field(), n, n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, k, c) in &self.comul[i] {
                out.entry_mut(*j, *k).add_mul_assign(a, c);
            }
        }
        out
    }

    /// Sparse Δ(x).
    pub fn coproduct_terms(&self, x: &[Scalar]) -> Vec<(usize, usize, Scalar)> {
        let m = self.coproduct(x);
        let n = self.dim();
        let mut out = Vec::new();
        for j in 0..n {
            for k in 0..n {
                if !m.get(j, k).is_zero() {
                    out.push((j, k, m.get(j, k).clone()));
                }
            }
        }
        out
    }

    /// Σ x₁ ⊗ x₂ ⊗ x₃ = (Δ ⊗ id)Δ(x), sparse.
    pub fn double_coproduct_terms(&self, x: &[Scalar]) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim();
        let mut dense = vec![self.field().zero(); n * n * n];
        for (j, k, c) in self.coproduct_terms(x) {
            for (a, b, d) in &self.comul[j] {
                dense[(a * n + b) * n + k].add_mul_assign(&c, d);
            }
        }
        dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (idx / (n * n), (idx / n) % n, idx % n, c))
            .collect()
    }

    pub fn counit_of(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.field().zero();
        for (a, b) in x.iter().zip(&self.counit) {
            acc.add_mul_assign(a, b);
        }
        acc
    }

    pub fn antipode_of(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.antipode.mul_vec(x)
    }

    pub fn is_commutative(&self) -> bool {
        self.algebra.is_commutative()
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let m = self.coproduct(&self.algebra.basis_vec(i));
            m == m.transpose()
        })
    }

    /// Integral line on the given side: h·t = ε(h)t (left) or t·h = ε(h)t (right)
    /// for every basis element h.
    pub fn integrals(&self, side: Side) -> Result<IntegralSpace, Error> {
        let a = &self.algebra;
        let n = a.dim();
        let field = self.field();
        let mut system = Matrix::zeros(field, 0, n);
        for h in 0..n {
            let eh = a.basis_vec(h);
            let mult = match side {
                Side::Left => a.left_mult_matrix(&eh),
                Side::Right => a.right_mult_matrix(&eh),
            };
            let shifted = mult.sub(&Matrix::identity(field, n).scale(&self.counit[h]));
            system = system.vstack(&shifted);
        }
        let kernel = system.kernel();
        if kernel.cols() != 1 {
            return Err(Error::MalformedHopf(format!(
                "integral space has dimension {} instead of 1",
                kernel.cols()
            )));
        }
        let basis = kernel.column(0);
        let eps = self.counit_of(&basis);
        let normalized = eps.inv().map(|inv| basis.iter().map(|c| c * &inv).collect());
        Ok(IntegralSpace { side, basis, normalized })
    }

    /// Semisimple iff ε does not vanish on the integral line; the witness is the
    /// normalized right integral.
    pub fn is_semisimple(&self) -> (bool, Option<Vec<Scalar>>) {
        match self.integrals(Side::Right) {
            Ok(space) => (space.normalized.is_some(), space.normalized),
            Err(_) => (false, None),
        }
    }

    pub fn normalized_right_integral(&self) -> Option<Vec<Scalar>> {
        self.is_semisimple().1
    }

    /// H* on the dual basis: multiplication is the transpose of Δ, Δ is the transpose of
    /// multiplication, the counit is evaluation at 1 and the antipode is Sᵀ.
    pub fn dual(&self) -> HopfAlgebra {
        let a = &self.algebra;
        let n = a.dim();
        let field = self.field();
        let names = a.basis_names().iter().map(|s| format!("{s}*")).collect();
        let mult: Vec<_> = self.comul_constants().map(|(h, i, j, c)| (i, j, h, c.clone())).collect();
        let unit = self.counit.clone();
        let alg = Algebra::new(field, names, unit, mult).expect("dual algebra presentation");
        let comul: Vec<_> = a.structure_constants().map(|(i, j, h, c)| (h, i, j, c.clone())).collect();
        let counit = a.unit().to_vec();
        debug_assert_eq!(counit.len(), n);
        HopfAlgebra::new(Arc::new(alg), comul, counit, self.antipode.transpose())
            .expect("dual Hopf presentation")
    }

    pub fn is_cosemisimple(&self) -> bool {
        self.dual().is_semisimple().0
    }
}

fn tensor_mul(a: &Algebra, x: &Matrix, y: &Matrix) -> Matrix {
    // (Σ x_jk e_j⊗e_k)(Σ y_lm e_l⊗e_m) = Σ x_jk y_lm (e_j e_l)⊗(e_k e_m)
    let n = a.dim();
    let mut out = Matrix::zeros(a.field(), n, n);
    for j in 0..n {
        for k in 0..n {
            let xjk = x.get(j, k);
            if xjk.is_zero() {
                continue;
            }
            for l in 0..n {
                for m in 0..n {
                    let ylm = y.get(l, m);
                    if ylm.is_zero() {
                        continue;
                    }
                    let s = xjk * ylm;
                    for (p, c1) in a.basis_product(j, l) {
                        for (q, c2) in a.basis_product(k, m) {
                            out.entry_mut(*p, *q).add_mul_assign(&s, &(c1 * c2));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Exhaustive check of coassociativity, counit, bialgebra, antipode and antipode
/// invertibility on basis elements.
pub fn validate_hopf(h: &HopfAlgebra) -> Result<Certificate, Violation> {
    let cert = validate_algebra(&h.algebra)?;
    let a = &h.algebra;
    let n = a.dim();
    let field = h.field();

    for i in 0..n {
        let lhs = h.double_coproduct_terms(&a.basis_vec(i));
        // (id ⊗ Δ)Δ(e_i)
        let mut dense = vec![field.zero(); n * n * n];
        for (j, k, c) in &h.comul[i] {
            for (b, d, e) in &h.comul[*k] {
                dense[(j * n + b) * n + d].add_mul_assign(c, e);
            }
        }
        let rhs: Vec<_> = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (idx / (n * n), (idx / n) % n, idx % n, c))
            .collect();
        if lhs != rhs {
            return Err(Violation::new("coassociativity", vec![i], format!("(Δ⊗id)Δ ≠ (id⊗Δ)Δ on e{i}")));
        }
    }

    for i in 0..n {
        let mut left = zero_vec(field, n);
        let mut right = zero_vec(field, n);
        for (j, k, c) in &h.comul[i] {
            left[*k].add_mul_assign(&h.counit[*j], c);
            right[*j].add_mul_assign(&h.counit[*k], c);
        }
        let ei = unit_vec(field, n, i);
        if left != ei || right != ei {
            return Err(Violation::new("counit", vec![i], format!("(ε⊗id)Δ or (id⊗ε)Δ differs from id on e{i}")));
        }
    }

    let unit_tensor = {
        let u = Matrix::column_vector(field, a.unit().to_vec());
        u.mul(&u.transpose())
    };
    if h.coproduct(a.unit()) != unit_tensor || !h.counit_of(a.unit()).is_one() {
        return Err(Violation::new("bialgebra", vec![], "Δ(1) ≠ 1⊗1 or ε(1) ≠ 1".into()));
    }
    let deltas: Vec<Matrix> = (0..n).map(|i| h.coproduct(&a.basis_vec(i))).collect();
    for i in 0..n {
        for j in 0..n {
            let prod = a.mul(&a.basis_vec(i), &a.basis_vec(j));
            if h.coproduct(&prod) != tensor_mul(a, &deltas[i], &deltas[j]) {
                return Err(Violation::new("bialgebra", vec![i, j], format!("Δ(e{i}e{j}) ≠ Δ(e{i})Δ(e{j})")));
            }
            if h.counit_of(&prod) != &h.counit[i] * &h.counit[j] {
                return Err(Violation::new("bialgebra", vec![i, j], format!("ε(e{i}e{j}) ≠ ε(e{i})ε(e{j})")));
            }
        }
    }

    for i in 0..n {
        let target: Vec<Scalar> = a.unit().iter().map(|u| u * &h.counit[i]).collect();
        let mut left = zero_vec(field, n);
        let mut right = zero_vec(field, n);
        for (j, k, c) in &h.comul[i] {
            let s_j = h.antipode.column(*j);
            let s_k = h.antipode.column(*k);
            crate::linalg::axpy(&mut left, c, &a.mul(&s_j, &a.basis_vec(*k)));
            crate::linalg::axpy(&mut right, c, &a.mul(&a.basis_vec(*j), &s_k));
        }
        if left != target || right != target {
            return Err(Violation::new("antipode", vec![i], format!("Σ S(h₁)h₂ or Σ h₁S(h₂) differs from ε(h)1 on e{i}")));
        }
    }

    if !h.antipode.is_invertible() {
        return Err(Violation::new("antipode-invertible", vec![], "antipode matrix is singular".into()));
    }
    Ok(cert.merge(Certificate::new(["coassociativity", "counit", "bialgebra", "antipode", "antipode-invertible"])))
}

/// kG with Δ(g) = g⊗g, ε(g) = 1, S(g) = g⁻¹.
pub fn group_hopf(group: &CayleyTable, field: FieldSpec) -> Result<HopfAlgebra, Error> {
    let alg = group_algebra(group, field)?;
    let n = group.order();
    let comul = (0..n).map(|g| (g, g, g, field.one()));
    let mut s = Matrix::zeros(field, n, n);
    for g in 0..n {
        s.set(group.inverse(g), g, field.one());
    }
    HopfAlgebra::new(Arc::new(alg), comul, vec![field.one(); n], s)
}

/// The one-dimensional Hopf algebra k.
pub fn trivial_hopf(field: FieldSpec) -> HopfAlgebra {
    HopfAlgebra::new(
        Arc::new(Algebra::ground(field)),
        [(0, 0, 0, field.one())],
        vec![field.one()],
        Matrix::identity(field, 1),
    )
    .expect("trivial Hopf algebra")
}

/// Sweedler's four-dimensional Hopf algebra on the basis 1, g, x, gx with g² = 1, x² = 0,
/// xg = −gx, Δg = g⊗g, Δx = x⊗1 + g⊗x, S(x) = −gx.
pub fn sweedler(field: FieldSpec) -> HopfAlgebra {
    let one = field.one();
    let neg = -&one;
    // basis words as (g-power, x-power); multiplication via x g = −g x
    let words = [(0u8, 0u8), (1, 0), (0, 1), (1, 1)];
    let index = |g: u8, x: u8| words.iter().position(|&w| w == (g % 2, x)).unwrap();
    let mut mult = Vec::new();
    for (i, &(g1, x1)) in words.iter().enumerate() {
        for (j, &(g2, x2)) in words.iter().enumerate() {
            if x1 + x2 > 1 {
                continue;
            }
            // g^{g1} x^{x1} g^{g2} x^{x2} = (−1)^{x1·g2} g^{g1+g2} x^{x1+x2}
            let sign = if x1 == 1 && g2 == 1 { neg.clone() } else { one.clone() };
            mult.push((i, j, index(g1 + g2, x1 + x2), sign));
        }
    }
    let names = ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect();
    let alg = Algebra::new(field, names, unit_vec(field, 4, 0), mult).expect("Sweedler algebra");
    // Δ(gx) = Δ(g)Δ(x) = gx⊗g + 1⊗gx
    let comul = vec![
        (0, 0, 0, one.clone()),
        (1, 1, 1, one.clone()),
        (2, 2, 0, one.clone()),
        (2, 1, 2, one.clone()),
        (3, 3, 1, one.clone()),
        (3, 0, 3, one.clone()),
    ];
    let counit = vec![one.clone(), one.clone(), field.zero(), field.zero()];
    // S(1)=1, S(g)=g, S(x)=−gx, S(gx)=S(x)S(g)=−gx·g = x
    let mut s = Matrix::zeros(field, 4, 4);
    s.set(0, 0, one.clone());
    s.set(1, 1, one.clone());
    s.set(3, 2, neg);
    s.set(2, 3, one);
    HopfAlgebra::new(Arc::new(alg), comul, counit, s).expect("Sweedler Hopf algebra")
}

/// True when x spans the same line as y (both nonzero).
pub fn same_line(x: &[Scalar], y: &[Scalar]) -> bool {
    if is_zero_vec(x) || is_zero_vec(y) {
        return false;
    }
    Matrix::from_columns(x[0].field(), x.len(), &[x.to_vec(), y.to_vec()]).rank() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn kc(n: usize, field: FieldSpec) -> HopfAlgebra {
        group_hopf(&CayleyTable::cyclic(n), field).unwrap()
    }

    #[test]
    fn group_hopf_validates() {
        assert!(validate_hopf(&kc(2, q())).is_ok());
        assert!(validate_hopf(&kc(3, FieldSpec::prime(7).unwrap())).is_ok());
    }

    #[test]
    fn sweedler_validates() {
        let h = sweedler(q());
        assert!(validate_hopf(&h).is_ok());
        assert!(!h.is_commutative());
        assert!(!h.is_cocommutative());
    }

    #[test]
    fn zero_antipode_is_reported() {
        let h = kc(2, q());
        let broken = HopfAlgebra::new(
            h.algebra().clone(),
            h.comul_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect::<Vec<_>>(),
            h.counit().to_vec(),
            Matrix::zeros(q(), 2, 2),
        )
        .unwrap();
        assert_eq!(validate_hopf(&broken).unwrap_err().check, "antipode");
    }

    #[test]
    fn integrals_of_kc2() {
        let h = kc(2, q());
        let space = h.integrals(Side::Right).unwrap();
        let half = q().from_ratio(1, 2).unwrap();
        assert_eq!(space.normalized, Some(vec![half.clone(), half]));
        let t = space.normalized.unwrap();
        for g in 0..2 {
            let eg = h.algebra().basis_vec(g);
            let lhs = h.algebra().mul(&t, &eg);
            let rhs: Vec<Scalar> = t.iter().map(|c| c * &h.counit()[g]).collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn integrals_of_trivial() {
        let h = trivial_hopf(q());
        assert_eq!(h.integrals(Side::Left).unwrap().normalized, Some(vec![q().one()]));
    }

    #[test]
    fn integrals_of_sweedler() {
        let h = sweedler(q());
        let left = h.integrals(Side::Left).unwrap();
        let x_plus_gx = vec![q().zero(), q().zero(), q().one(), q().one()];
        assert!(same_line(&left.basis, &x_plus_gx));
        assert!(left.normalized.is_none());
        let right = h.integrals(Side::Right).unwrap();
        let x_minus_gx = vec![q().zero(), q().zero(), q().one(), q().from_i64(-1)];
        assert!(same_line(&right.basis, &x_minus_gx));
        assert!(right.normalized.is_none());
    }

    #[test]
    fn semisimplicity_follows_characteristic() {
        assert!(kc(2, q()).is_semisimple().0);
        assert!(!kc(2, FieldSpec::prime(2).unwrap()).is_semisimple().0);
        assert!(!sweedler(q()).is_semisimple().0);
        assert!(kc(3, FieldSpec::prime(7).unwrap()).is_semisimple().0);
    }

    #[test]
    fn cosemisimplicity() {
        assert!(kc(2, q()).is_cosemisimple());
        assert!(!sweedler(q()).is_cosemisimple());
        assert!(kc(3, FieldSpec::prime(3).unwrap()).is_cosemisimple());
    }

    #[test]
    fn dual_is_valid_and_involutive() {
        for h in [kc(2, q()), kc(3, q()), sweedler(q()), trivial_hopf(q())] {
            let d = h.dual();
            assert_eq!(d.dim(), h.dim());
            assert!(validate_hopf(&d).is_ok());
            let dd = d.dual();
            assert_eq!(dd.algebra().as_ref(), h.algebra().as_ref());
            assert_eq!(dd.comul, h.comul);
            assert_eq!(dd.counit, h.counit);
            assert_eq!(dd.antipode, h.antipode);
        }
        assert!(kc(2, q()).dual().is_semisimple().0);
    }
}
