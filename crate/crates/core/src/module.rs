//! Finite-dimensional left modules given by one action matrix per basis element.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMap};
use crate::linalg::{is_zero_vec, FieldSpec, Matrix, Scalar, Subspace};
use crate::structure::{self, Structure};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl Module {
    /// Checks ρ(1) = id and ρ(e_i)ρ(e_j) = Σ c[i][j][k] ρ(e_k) on every basis pair.
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Self, Error> {
        if action.len() != algebra.dim() {
            return Err(Error::Malformed(format!(
                "module needs {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        if action.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::Malformed(format!("action matrices must be {dim}×{dim}")));
        }
        let m = Module { algebra, dim, action };
        m.check_action()?;
        Ok(m)
    }

    /// For modules that are correct by construction.
    pub(crate) fn from_parts(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Self {
        debug_assert_eq!(action.len(), algebra.dim());
        Module { algebra, dim, action }
    }

    fn check_action(&self) -> Result<(), Error> {
        let a = &self.algebra;
        if !self.rho(a.unit()).is_identity() {
            return Err(Error::Malformed("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Matrix::zeros(a.field(), self.dim, self.dim);
                for (k, c) in a.basis_product(i, j) {
                    rhs.add_scaled(c, &self.action[*k]);
                }
                if lhs != rhs {
                    return Err(Error::Malformed(format!("action fails on basis pair ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// ρ(x) for an algebra element given by coordinates.
    pub fn rho(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(c, &self.action[i]);
            }
        }
        out
    }

    pub fn act(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.rho(x).mul_vec(v)
    }

    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let action = algebra.left_regular();
        let dim = algebra.dim();
        Module::from_parts(algebra, dim, action)
    }

    /// A^n.
    pub fn free(algebra: Arc<Algebra>, n: usize) -> Self {
        let reg = Module::regular(algebra.clone());
        (0..n).fold(Module::zero(algebra), |acc, _| acc.direct_sum(&reg))
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let field = algebra.field();
        let action = vec![Matrix::zeros(field, 0, 0); algebra.dim()];
        Module::from_parts(algebra, 0, action)
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Module::from_parts(self.algebra.clone(), self.dim + other.dim, action)
    }

    /// True when `f` (target.dim × self.dim) intertwines the actions.
    pub fn is_homomorphism(&self, target: &Module, f: &Matrix) -> bool {
        f.shape() == (target.dim, self.dim)
            && self
                .algebra
                .generators()
                .iter()
                .all(|&g| target.action[g].mul(f) == f.mul(&self.action[g]))
    }

    /// The submodule generated by the given vectors.
    pub fn generated(&self, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Subspace {
        let mut span = Subspace::zero(self.field(), self.dim);
        let mut queue = Vec::new();
        for v in vectors {
            if span.insert(v.clone()) {
                queue.push(v);
            }
        }
        let gens = self.algebra.generators();
        while let Some(v) = queue.pop() {
            for &g in gens {
                let w = self.action[g].mul_vec(&v);
                if span.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        span
    }

    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        self.algebra
            .generators()
            .iter()
            .all(|&g| sub.basis().iter().all(|b| sub.contains(&self.action[g].mul_vec(b))))
    }

    /// The submodule on the RREF basis of `sub`, with its inclusion matrix.
    pub fn submodule(&self, sub: &Subspace) -> Result<(Module, Matrix), Error> {
        if !self.is_submodule(sub) {
            return Err(Error::Malformed("subspace is not stable under the action".into()));
        }
        let k = sub.dim();
        let action = self
            .action
            .iter()
            .map(|rho| {
                let cols: Vec<_> = sub
                    .basis()
                    .iter()
                    .map(|b| sub.coordinates(&rho.mul_vec(b)).expect("stable subspace"))
                    .collect();
                Matrix::from_columns(self.field(), k, &cols)
            })
            .collect();
        Ok((Module::from_parts(self.algebra.clone(), k, action), sub.basis_matrix()))
    }

    /// M/sub on the complement of standard vectors, with the projection matrix.
    pub fn quotient(&self, sub: &Subspace) -> Result<(Module, Matrix), Error> {
        if !self.is_submodule(sub) {
            return Err(Error::Malformed("subspace is not stable under the action".into()));
        }
        let quot = sub.quotient();
        let q = quot.dim();
        let action = self
            .action
            .iter()
            .map(|rho| {
                let cols: Vec<_> = quot.free_positions().iter().map(|&f| quot.project(&rho.column(f))).collect();
                Matrix::from_columns(self.field(), q, &cols)
            })
            .collect();
        Ok((Module::from_parts(self.algebra.clone(), q, action), quot.projection))
    }

    /// Restriction along φ: A → B of a B-module.
    pub fn restrict(&self, phi: &AlgebraMap) -> Module {
        assert_eq!(phi.target.dim(), self.algebra.dim(), "restriction along a map into another algebra");
        let action = (0..phi.source.dim())
            .map(|i| self.rho(&phi.apply(&phi.source.basis_vec(i))))
            .collect();
        Module::from_parts(phi.source.clone(), self.dim, action)
    }

    /// Reinterprets the module over an equal algebra held in another `Arc`.
    pub fn over(&self, algebra: Arc<Algebra>) -> Module {
        assert_eq!(*algebra, *self.algebra);
        Module::from_parts(algebra, self.dim, self.action.clone())
    }

    /// Hom_k(M, k) with (a·f)(m) = f(a·m), a left module over the opposite algebra.
    pub fn dual(&self) -> Module {
        let op = Arc::new(self.algebra.opposite());
        let action = self.action.iter().map(Matrix::transpose).collect();
        Module::from_parts(op, self.dim, action)
    }

    /// The dual taken over a known opposite algebra.
    pub fn dual_over(&self, opposite: Arc<Algebra>) -> Module {
        let action = self.action.iter().map(Matrix::transpose).collect();
        Module::from_parts(opposite, self.dim, action)
    }
}

/// A module homomorphism, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<Self, Error> {
        if !source.is_homomorphism(&target, &matrix) {
            return Err(Error::Malformed("matrix does not intertwine the actions".into()));
        }
        Ok(ModuleMap { source, target, matrix })
    }
}

/// Coefficient system of X ↦ ρ_N(a)X − Xρ_M(a) for the algebra generators, acting on X
/// vectorized row-major.
fn intertwining_system(m: &Module, n: &Module) -> Matrix {
    let field = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let mut system = Matrix::zeros(field, 0, dn * dm);
    for &g in m.algebra.generators() {
        let left = n.action[g].kron(&Matrix::identity(field, dm));
        let right = Matrix::identity(field, dn).kron(&m.action[g].transpose());
        system = system.vstack(&left.sub(&right));
    }
    system
}

/// Basis of Hom_A(M, N), each map an (N.dim × M.dim) matrix.
pub fn hom_space(m: &Module, n: &Module) -> Vec<Matrix> {
    assert_eq!(m.algebra.dim(), n.algebra.dim(), "modules over different algebras");
    let field = m.field();
    if m.dim == 0 || n.dim == 0 {
        return Vec::new();
    }
    let kernel = intertwining_system(m, n).kernel();
    kernel
        .columns()
        .into_iter()
        .map(|v| Matrix::from_vector(field, n.dim, m.dim, v))
        .collect()
}

/// Result of a bounded search for an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoSearch {
    Isomorphic(Matrix),
    NotIsomorphic,
    Indeterminate,
}

const ISO_BUDGET: usize = 4096;

/// Looks for an invertible element of Hom(M, N): basis elements first, then integer
/// combinations with coefficients in {−2..2}.
pub fn find_isomorphism(m: &Module, n: &Module) -> IsoSearch {
    if m.dim != n.dim {
        return IsoSearch::NotIsomorphic;
    }
    if m.dim == 0 {
        return IsoSearch::Isomorphic(Matrix::zeros(m.field(), 0, 0));
    }
    let hom = hom_space(m, n);
    if hom.is_empty() {
        return IsoSearch::NotIsomorphic;
    }
    if hom.len() != hom_space(m, m).len() {
        return IsoSearch::NotIsomorphic;
    }
    for f in &hom {
        if f.is_invertible() {
            return IsoSearch::Isomorphic(f.clone());
        }
    }
    let field = m.field();
    let k = hom.len();
    let coeffs = [1i64, -1, 2, -2, 0];
    let mut counter = vec![0usize; k];
    for _ in 0..ISO_BUDGET {
        // odometer over coefficient indices
        let mut pos = 0;
        loop {
            if pos == k {
                return IsoSearch::Indeterminate;
            }
            counter[pos] += 1;
            if counter[pos] < coeffs.len() {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
        let mut f = Matrix::zeros(field, n.dim, m.dim);
        for (c, b) in counter.iter().zip(&hom) {
            f.add_scaled(&field.from_i64(coeffs[*c]), b);
        }
        if f.is_invertible() {
            return IsoSearch::Isomorphic(f);
        }
    }
    IsoSearch::Indeterminate
}

/// Generators of M modulo JM, one batch per simple type: vectors of e_c M chosen greedily
/// outside JM plus the submodule generated so far. Falls back to the full basis when the
/// radical is unavailable.
pub fn top_generators(m: &Module, structure: Option<&Structure>) -> Vec<(usize, Vec<Scalar>)> {
    let field = m.field();
    let Some(st) = structure else {
        return (0..m.dim).map(|i| (0, crate::linalg::unit_vec(field, m.dim, i))).collect();
    };
    let mut span = Subspace::zero(field, m.dim);
    for j in st.radical.basis() {
        let rj = m.rho(j);
        for col in rj.columns() {
            span.insert(col);
        }
    }
    let mut gens = Vec::new();
    for (c, e) in st.idempotents.iter().enumerate() {
        if span.dim() == m.dim {
            break;
        }
        let re = m.rho(e);
        for v in re.columns() {
            if is_zero_vec(&v) || span.contains(&v) {
                continue;
            }
            span = span.sum(&m.generated([v.clone()]));
            gens.push((c, v));
        }
    }
    debug_assert_eq!(span.dim(), m.dim);
    gens
}

/// A projective cover π: ⊕ A e_c → M built from the top generators, or a free cover when
/// the radical is unavailable. Returns the cover module, its summand types and π.
pub fn projective_cover(m: &Module, structure: Option<&Structure>) -> (Module, Vec<usize>, Matrix) {
    let a = m.algebra.clone();
    let field = m.field();
    let gens = top_generators(m, structure);
    let mut cover = Module::zero(a.clone());
    let mut columns = Vec::new();
    let mut types = Vec::new();
    for (c, v) in &gens {
        let (summand, basis) = match structure {
            Some(st) => (st.projective_module(&a, *c), st.projective_basis(*c).to_vec()),
            None => (Module::regular(a.clone()), (0..a.dim()).map(|i| a.basis_vec(i)).collect()),
        };
        for b in &basis {
            columns.push(m.act(b, v));
        }
        cover = cover.direct_sum(&summand);
        types.push(*c);
    }
    let pi = Matrix::from_columns(field, m.dim, &columns);
    (cover, types, pi)
}

/// Projectivity test: M is projective iff its cover π: P → M splits. Returns a section s
/// with π∘s = id when it exists.
pub fn is_projective(m: &Module) -> (bool, Option<Matrix>) {
    let st = structure::analyze(m.algebra()).ok();
    let (cover, _, pi) = projective_cover(m, st.as_deref());
    split_surjection(m, &cover, &pi)
}

/// Searches s ∈ Hom(M, P) with π∘s = id_M.
pub fn split_surjection(m: &Module, cover: &Module, pi: &Matrix) -> (bool, Option<Matrix>) {
    let field = m.field();
    if m.dim == 0 {
        return (true, Some(Matrix::zeros(field, cover.dim, 0)));
    }
    let hom = hom_space(m, cover);
    if hom.is_empty() {
        return (false, None);
    }
    let cols: Vec<_> = hom.iter().map(|s| pi.mul(s).vectorize()).collect();
    let system = Matrix::from_columns(field, m.dim * m.dim, &cols);
    let target = Matrix::column_vector(field, Matrix::identity(field, m.dim).vectorize());
    match system.solve(&target) {
        Ok(coeffs) => {
            let mut s = Matrix::zeros(field, cover.dim, m.dim);
            for (c, b) in coeffs.column(0).iter().zip(&hom) {
                s.add_scaled(c, b);
            }
            (true, Some(s))
        }
        Err(_) => (false, None),
    }
}

/// Injective iff the dual is projective over the opposite algebra.
pub fn is_injective(m: &Module) -> bool {
    is_projective(&m.dual()).0
}

/// Flat iff projective for finite-dimensional modules; cross-checked against the
/// vanishing of Tor₁(S, M) for every simple right module S.
pub fn is_flat(m: &Module, cap: usize) -> Result<bool, Error> {
    let projective = is_projective(m).0;
    let op = Arc::new(m.algebra().opposite());
    let st_op = structure::analyze(&op)?;
    let mut tor_vanishes = true;
    for c in 0..st_op.simple_count() {
        let s = st_op.simple_module(&op, c);
        if crate::homology::tor(&s, m, 1, cap.max(2))?.dim != 0 {
            tor_vanishes = false;
            break;
        }
    }
    if projective != tor_vanishes {
        return Err(Error::InternalInconsistency(format!(
            "projectivity test says {projective} but Tor₁ probe says {tor_vanishes}"
        )));
    }
    Ok(projective)
}

/// Oracle: M is a summand of some A^n iff id_M lies in the span of the composites
/// g∘f with f: M → A and g: A → M.
pub fn is_projective_by_trace(m: &Module) -> bool {
    let field = m.field();
    if m.dim == 0 {
        return true;
    }
    let reg = Module::regular(m.algebra.clone());
    let into = hom_space(m, &reg);
    let out = hom_space(&reg, m);
    let span = Subspace::span(
        field,
        m.dim * m.dim,
        out.iter().flat_map(|g| into.iter().map(move |f| g.mul(f).vectorize())),
    );
    span.contains(&Matrix::identity(field, m.dim).vectorize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_algebra, matrix_algebra, quotient_poly_algebra, upper_triangular, CayleyTable};
    use crate::linalg::Poly;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn dual_numbers() -> Arc<Algebra> {
        Arc::new(quotient_poly_algebra(&Poly::from_i64(q(), &[0, 0, 1])).unwrap())
    }

    fn trivial_module(a: &Arc<Algebra>, eval: &[i64]) -> Module {
        let action = eval.iter().map(|&x| Matrix::from_i64(q(), &[&[x]])).collect();
        Module::new(a.clone(), 1, action).unwrap()
    }

    #[test]
    fn rejects_bad_action() {
        let a = dual_numbers();
        let bad = vec![Matrix::from_i64(q(), &[&[1]]), Matrix::from_i64(q(), &[&[1]])];
        assert!(Module::new(a, 1, bad).is_err());
    }

    #[test]
    fn hom_between_simples_of_ut2() {
        let a = Arc::new(upper_triangular(2, q()).unwrap());
        let st = structure::analyze(&a).unwrap();
        assert_eq!(st.simple_count(), 2);
        let s0 = st.simple_module(&a, 0);
        let s1 = st.simple_module(&a, 1);
        assert!(hom_space(&s0, &s1).is_empty());
        assert_eq!(hom_space(&s0, &s0).len(), 1);
    }

    #[test]
    fn hom_from_regular_has_dim_of_target() {
        let a = Arc::new(group_algebra(&CayleyTable::symmetric3(), q()).unwrap());
        let reg = Module::regular(a.clone());
        let trivial = Module::new(a.clone(), 1, vec![Matrix::from_i64(q(), &[&[1]]); 6]).unwrap();
        assert_eq!(hom_space(&reg, &trivial).len(), 1);
        let two = trivial.direct_sum(&trivial);
        assert_eq!(hom_space(&reg, &two).len(), 2);
        assert_eq!(hom_space(&reg, &reg).len(), 6);
    }

    #[test]
    fn identity_is_a_homomorphism() {
        let a = dual_numbers();
        let m = Module::regular(a);
        let hom = hom_space(&m, &m);
        let span = Subspace::span(q(), 4, hom.iter().map(Matrix::vectorize));
        assert!(span.contains(&Matrix::identity(q(), 2).vectorize()));
    }

    #[test]
    fn projectivity_over_dual_numbers() {
        let a = dual_numbers();
        let simple = trivial_module(&a, &[1, 0]);
        assert!(!is_projective(&simple).0);
        assert!(!is_projective_by_trace(&simple));
        assert!(is_projective(&Module::free(a.clone(), 2)).0);
        assert!(!is_injective(&simple));
        assert!(is_injective(&Module::regular(a).dual()));
    }

    #[test]
    fn splitting_witness_is_a_section() {
        let a = Arc::new(upper_triangular(2, q()).unwrap());
        let st = structure::analyze(&a).unwrap();
        for c in 0..2 {
            let p = st.projective_module(&a, c);
            let (ok, s) = is_projective(&p);
            assert!(ok);
            let (cover, _, pi) = projective_cover(&p, Some(&st));
            let s = s.unwrap();
            assert!(p.is_homomorphism(&cover, &s));
            assert!(pi.mul(&s).is_identity());
        }
    }

    #[test]
    fn restriction_of_regular_is_free() {
        let base = Arc::new(Algebra::ground(q()));
        let m2 = Arc::new(matrix_algebra(&base, 2).unwrap());
        let phi = AlgebraMap::new(base.clone(), m2.clone(), Matrix::column_vector(q(), m2.unit().to_vec())).unwrap();
        let res = Module::regular(m2).restrict(&phi);
        assert_eq!(res.dim(), 4);
        assert!(res.actions()[0].is_identity());
    }

    #[test]
    fn double_dual_is_isomorphic() {
        let a = Arc::new(upper_triangular(2, q()).unwrap());
        let m = Module::regular(a.clone());
        let dd = m.dual().dual().over(a);
        assert!(matches!(find_isomorphism(&m, &dd), IsoSearch::Isomorphic(_)));
    }

    #[test]
    fn iso_search_rejects_different_simples() {
        let a = dual_numbers();
        let s = trivial_module(&a, &[1, 0]);
        let reg = Module::regular(a);
        assert_eq!(find_isomorphism(&s, &reg), IsoSearch::NotIsomorphic);
        assert!(matches!(find_isomorphism(&s, &s), IsoSearch::Isomorphic(_)));
    }

    #[test]
    fn submodule_and_quotient_of_regular() {
        let a = dual_numbers();
        let reg = Module::regular(a.clone());
        let rad = Subspace::span(q(), 2, [a.basis_vec(1)]);
        let (sub, inc) = reg.submodule(&rad).unwrap();
        assert_eq!(sub.dim(), 1);
        assert!(sub.is_homomorphism(&reg, &inc));
        let (quot, proj) = reg.quotient(&rad).unwrap();
        assert_eq!(quot.dim(), 1);
        assert!(reg.is_homomorphism(&quot, &proj));
        let not_stable = Subspace::span(q(), 2, [a.basis_vec(0)]);
        assert!(reg.submodule(&not_stable).is_err());
    }
}
