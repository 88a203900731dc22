//! Jacobson radical via the trace form, splitting of the semisimple quotient into
//! primitive idempotents, simple modules and their projective covers.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::linalg::{axpy, is_zero_vec, FactorSearch, Matrix, Scalar, Subspace};
use crate::module::Module;
use crate::Error;

/// How the radical was obtained: the trace form of the regular or of the attached
/// faithful representation, or the kernel of the m-th Frobenius power (commutative
/// algebras in positive characteristic).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceSource {
    Regular,
    Faithful(usize),
    Frobenius(usize),
}

/// Radical, simple modules and principal projectives of a finite-dimensional algebra.
/// Simple type c has a lifted primitive idempotent e_c, S_c = Ae_c / Je_c and
/// projective cover Ae_c.
#[derive(Clone, Debug)]
pub struct Structure {
    pub radical: Subspace,
    pub trace_source: TraceSource,
    /// Nilpotency index of J: the least m with J^m = 0.
    pub nilpotency: usize,
    pub idempotents: Vec<Vec<Scalar>>,
    /// Number of primitive idempotents of type c in a decomposition of 1 in A/J.
    pub multiplicities: Vec<usize>,
    simple_actions: Vec<Vec<Matrix>>,
    projective_bases: Vec<Subspace>,
    projective_actions: Vec<Vec<Matrix>>,
    pub endomorphism_dims: Vec<usize>,
}

impl Structure {
    pub fn simple_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn simple_dim(&self, c: usize) -> usize {
        self.simple_actions[c].first().map_or(0, Matrix::rows)
    }

    pub fn simple_module(&self, a: &Arc<Algebra>, c: usize) -> Module {
        Module::from_parts(a.clone(), self.simple_dim(c), self.simple_actions[c].clone())
    }

    pub fn simple_modules(&self, a: &Arc<Algebra>) -> Vec<Module> {
        (0..self.simple_count()).map(|c| self.simple_module(a, c)).collect()
    }

    /// The RREF basis of Ae_c inside A.
    pub fn projective_basis(&self, c: usize) -> &[Vec<Scalar>] {
        self.projective_bases[c].basis()
    }

    pub fn projective_module(&self, a: &Arc<Algebra>, c: usize) -> Module {
        Module::from_parts(a.clone(), self.projective_bases[c].dim(), self.projective_actions[c].clone())
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical.dim() == 0
    }
}

/// Cached structure of `a`.
pub fn analyze(a: &Arc<Algebra>) -> Result<Arc<Structure>, Error> {
    a.structure_cell().get_or_init(|| compute(a).map(Arc::new)).clone()
}

/// Radical basis and simple modules.
pub fn radical_and_simples(a: &Arc<Algebra>) -> Result<(Subspace, Vec<Module>), Error> {
    let st = analyze(a)?;
    Ok((st.radical.clone(), st.simple_modules(a)))
}

/// Traces of ρ(e_k) in a representation for which the trace form detects the radical.
/// {x : tr ρ(xy) = 0 for all y} for the representation with traces `tau`. It always
/// contains J, and equals J when p = 0 or p exceeds the degree of ρ.
fn trace_kernel(a: &Algebra, tau: &[Scalar]) -> Subspace {
    let n = a.dim();
    let mut form = Matrix::zeros(a.field(), n, n);
    for (i, j, k, c) in a.structure_constants() {
        form.entry_mut(i, j).add_mul_assign(c, &tau[k]);
    }
    Subspace::column_span(&form.kernel())
}

/// The nilpotency index of `k` if it is a nilpotent two-sided ideal.
fn nilpotent_ideal_index(a: &Algebra, k: &Subspace) -> Option<usize> {
    let n = a.dim();
    for x in k.basis() {
        for i in 0..n {
            let ei = a.basis_vec(i);
            if !k.contains(&a.mul(&ei, x)) || !k.contains(&a.mul(x, &ei)) {
                return None;
            }
        }
    }
    let mut power = k.clone();
    let mut index = 1;
    while power.dim() > 0 {
        if index > n + 1 {
            return None;
        }
        power = Subspace::span(
            a.field(),
            n,
            power.basis().iter().flat_map(|p| k.basis().iter().map(move |r| a.mul(p, r))),
        );
        index += 1;
    }
    Some(index)
}

/// ker F^m for x ↦ x^p with p^m ≥ dim A. On a commutative algebra over GF(p) this map is
/// linear and its iterated kernel is the nilradical.
fn frobenius_kernel(a: &Algebra, p: u64) -> (Subspace, usize) {
    let n = a.dim();
    let cols: Vec<Vec<Scalar>> = (0..n).map(|i| a.pow(&a.basis_vec(i), p as usize)).collect();
    let f = Matrix::from_columns(a.field(), n, &cols);
    let mut m = 1;
    let mut reach = p as usize;
    let mut fm = f.clone();
    while reach < n {
        fm = fm.mul(&f);
        reach = reach.saturating_mul(p as usize);
        m += 1;
    }
    (Subspace::column_span(&fm.kernel()), m)
}

/// The Jacobson radical with its nilpotency index. The trace form is exact when p = 0
/// or p exceeds the degree of the representation used; otherwise a trace kernel is
/// accepted only when it is a nilpotent ideal (it always contains J), and commutative
/// algebras fall back to the Frobenius kernel.
pub fn radical(a: &Algebra) -> Result<(Subspace, TraceSource, usize), Error> {
    let p = a.field().characteristic();
    let exact = |degree: usize| p == 0 || p as usize > degree;
    let mut candidates: Vec<(Vec<Scalar>, TraceSource, bool)> = Vec::new();
    if let Some(rep) = a.faithful_representation() {
        let d = rep[0].rows();
        candidates.push((rep.iter().map(Matrix::trace).collect(), TraceSource::Faithful(d), exact(d)));
    }
    let reg = (a.left_regular().iter().map(Matrix::trace).collect(), TraceSource::Regular, exact(a.dim()));
    if reg.2 {
        candidates.insert(0, reg);
    } else {
        candidates.push(reg);
    }
    for (tau, source, is_exact) in candidates {
        let k = trace_kernel(a, &tau);
        match nilpotent_ideal_index(a, &k) {
            Some(index) => return Ok((k, source, index)),
            None if is_exact => {
                return Err(Error::InternalInconsistency("trace-form radical is not a nilpotent ideal".into()))
            }
            None => {}
        }
    }
    if a.is_commutative() {
        let (k, m) = frobenius_kernel(a, p);
        if let Some(index) = nilpotent_ideal_index(a, &k) {
            return Ok((k, TraceSource::Frobenius(m), index));
        }
    }
    Err(Error::UnsupportedCharacteristic { characteristic: p, dim: a.dim() })
}

fn compute(a: &Arc<Algebra>) -> Result<Structure, Error> {
    let field = a.field();
    let n = a.dim();
    let (rad, trace_source, nilpotency) = radical(a)?;
    let (bar, proj) = a.quotient(&rad);
    let one = bar.unit().to_vec();
    let mut primitive = Vec::new();
    split_idempotent(&bar, one, &mut primitive, 0)?;

    let total: Vec<Scalar> = primitive.iter().fold(bar.zero(), |mut acc, e| {
        axpy(&mut acc, &field.one(), e);
        acc
    });
    if total != bar.unit() {
        return Err(Error::InternalInconsistency("primitive idempotents do not sum to 1".into()));
    }

    // isoclasses: ē_a Ā ē_b ≠ 0
    let mut class_of: Vec<usize> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for (i, e) in primitive.iter().enumerate() {
        let found = reps.iter().position(|&r| {
            (0..bar.dim()).any(|k| !is_zero_vec(&bar.mul(&bar.mul(e, &bar.basis_vec(k)), &primitive[r])))
        });
        match found {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(reps.len());
                reps.push(i);
            }
        }
    }
    let multiplicities: Vec<usize> =
        (0..reps.len()).map(|c| class_of.iter().filter(|&&x| x == c).count()).collect();

    let free = rad.quotient().free_positions().to_vec();
    let reg = Module::regular(a.clone());
    let mut idempotents = Vec::new();
    let mut simple_actions = Vec::new();
    let mut projective_bases = Vec::new();
    let mut projective_actions = Vec::new();
    let mut endomorphism_dims = Vec::new();
    for &r in &reps {
        let mut lift = a.zero();
        for (pos, c) in free.iter().zip(&primitive[r]) {
            lift[*pos] = c.clone();
        }
        let e = lift_idempotent(a, lift, nilpotency)?;
        if proj.mul_vec(&e) != primitive[r] {
            return Err(Error::InternalInconsistency("lifted idempotent has the wrong image".into()));
        }
        let ae = Subspace::span(field, n, (0..n).map(|i| a.mul(&a.basis_vec(i), &e)));
        let je = Subspace::span(field, n, rad.basis().iter().map(|j| a.mul(j, &e)));
        let (pe, _) = reg.submodule(&ae)?;
        let je_in_pe = Subspace::span(
            field,
            ae.dim(),
            je.basis().iter().map(|v| ae.coordinates(v).expect("Je ⊆ Ae")),
        );
        let (simple, _) = pe.quotient(&je_in_pe)?;
        // End(S_c) ≅ ē Ā ē
        let corner = Subspace::span(
            field,
            bar.dim(),
            (0..bar.dim()).map(|k| bar.mul(&bar.mul(&primitive[r], &bar.basis_vec(k)), &primitive[r])),
        );
        endomorphism_dims.push(corner.dim());
        simple_actions.push(simple.actions().to_vec());
        projective_actions.push(pe.actions().to_vec());
        projective_bases.push(ae);
        idempotents.push(e);
    }

    let wedderburn: usize = simple_actions
        .iter()
        .zip(&endomorphism_dims)
        .map(|(s, d)| s[0].rows() * s[0].rows() / d)
        .sum();
    if wedderburn != bar.dim() {
        return Err(Error::InternalInconsistency(format!(
            "Σ dim(S)²/dim End(S) = {wedderburn} but dim A/J = {}",
            bar.dim()
        )));
    }
    Ok(Structure {
        radical: rad,
        trace_source,
        nilpotency,
        idempotents,
        multiplicities,
        simple_actions,
        projective_bases,
        projective_actions,
        endomorphism_dims,
    })
}

/// a ← 3a² − 2a³ until idempotent; converges when a is idempotent modulo a nilpotent ideal.
fn lift_idempotent(a: &Algebra, mut x: Vec<Scalar>, nilpotency: usize) -> Result<Vec<Scalar>, Error> {
    let field = a.field();
    let three = field.from_i64(3);
    let minus_two = field.from_i64(-2);
    for _ in 0..=nilpotency + 1 {
        let sq = a.mul(&x, &x);
        if sq == x {
            return Ok(x);
        }
        let cube = a.mul(&sq, &x);
        let mut next = a.zero();
        axpy(&mut next, &three, &sq);
        axpy(&mut next, &minus_two, &cube);
        x = next;
    }
    Err(Error::InternalInconsistency("idempotent lifting did not converge".into()))
}

/// Candidate elements of the corner eCe: projected basis elements, then sums, differences
/// and products of pairs.
fn corner_candidates(a: &Algebra, e: &[Scalar]) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let corner = |x: &[Scalar]| a.mul(&a.mul(e, x), e);
    let mut base: Vec<Vec<Scalar>> = Vec::new();
    let mut seen = Subspace::zero(a.field(), n);
    seen.insert(e.to_vec());
    for i in 0..n {
        let c = corner(&a.basis_vec(i));
        if !is_zero_vec(&c) && seen.insert(c.clone()) {
            base.push(c);
        }
    }
    let mut out = base.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            let mut s = base[i].clone();
            axpy(&mut s, &a.field().one(), &base[j]);
            out.push(s);
            let mut d = base[i].clone();
            axpy(&mut d, &a.field().from_i64(-1), &base[j]);
            out.push(d);
            out.push(a.mul(&base[i], &base[j]));
            out.push(a.mul(&base[j], &base[i]));
        }
    }
    out
}

fn corner_dim(a: &Algebra, e: &[Scalar]) -> usize {
    Subspace::span(
        a.field(),
        a.dim(),
        (0..a.dim()).map(|i| a.mul(&a.mul(e, &a.basis_vec(i)), e)),
    )
    .dim()
}

fn corner_is_commutative(a: &Algebra, e: &[Scalar]) -> bool {
    let n = a.dim();
    let elems: Vec<_> = (0..n).map(|i| a.mul(&a.mul(e, &a.basis_vec(i)), e)).collect();
    elems.iter().all(|x| elems.iter().all(|y| a.mul(x, y) == a.mul(y, x)))
}

/// Recursively splits the idempotent e of a semisimple algebra into primitive orthogonal
/// idempotents.
fn split_idempotent(a: &Algebra, e: Vec<Scalar>, out: &mut Vec<Vec<Scalar>>, depth: usize) -> Result<(), Error> {
    let dim = corner_dim(a, &e);
    if dim == 1 {
        out.push(e);
        return Ok(());
    }
    if depth > a.dim() {
        return Err(Error::DecompositionFailed("recursion too deep".into()));
    }
    let mut certified_division = false;
    let mut unknown = false;
    for b in corner_candidates(a, &e) {
        let mu = a.min_poly(&b, &e);
        let deg = mu.degree().unwrap_or(0);
        if deg <= 1 {
            continue;
        }
        match mu.proper_factor() {
            FactorSearch::Found(f) => {
                let z = a.eval_poly(&f, &b, &e);
                if is_zero_vec(&z) {
                    continue;
                }
                let u = left_identity_of_right_ideal(a, &z, &e)?;
                let mut rest = e.clone();
                axpy(&mut rest, &a.field().from_i64(-1), &u);
                if is_zero_vec(&u) || is_zero_vec(&rest) {
                    continue;
                }
                split_idempotent(a, u, out, depth + 1)?;
                split_idempotent(a, rest, out, depth + 1)?;
                return Ok(());
            }
            FactorSearch::Irreducible => {
                if deg == dim && corner_is_commutative(a, &e) {
                    certified_division = true;
                    break;
                }
            }
            FactorSearch::Unknown => unknown = true,
        }
    }
    if certified_division {
        out.push(e);
        return Ok(());
    }
    Err(Error::DecompositionFailed(format!(
        "corner of dimension {dim} has no zero divisor among the candidates and is not certified a field{}",
        if unknown { " (factorization search inconclusive)" } else { "" }
    )))
}

/// For a non-unit z of the corner C = eAe, the idempotent u ∈ zC acting as a left
/// identity on zC.
fn left_identity_of_right_ideal(a: &Algebra, z: &[Scalar], e: &[Scalar]) -> Result<Vec<Scalar>, Error> {
    let field = a.field();
    let n = a.dim();
    let ideal = Subspace::span(
        field,
        n,
        (0..n).map(|i| a.mul(z, &a.mul(&a.mul(e, &a.basis_vec(i)), e))),
    );
    let w = ideal.basis().to_vec();
    let k = w.len();
    // Σ c_i w_i w_l = w_l for every l
    let mut rows = Matrix::zeros(field, 0, k);
    let mut rhs = Vec::new();
    for wl in &w {
        let prods: Vec<_> = w.iter().map(|wi| a.mul(wi, wl)).collect();
        rows = rows.vstack(&Matrix::from_columns(field, n, &prods));
        rhs.extend(wl.iter().cloned());
    }
    let sol = rows
        .solve(&Matrix::column_vector(field, rhs))
        .map_err(|_| Error::DecompositionFailed("right ideal has no left identity (not semisimple?)".into()))?;
    let mut u = a.zero();
    for (c, wi) in sol.column(0).iter().zip(&w) {
        axpy(&mut u, c, wi);
    }
    debug_assert_eq!(a.mul(&u, &u), u);
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;
    use crate::algebra::{group_algebra, matrix_algebra, matrix_algebra_represented, quotient_poly_algebra, upper_triangular, CayleyTable};
    use crate::linalg::Poly;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn dims(a: Algebra) -> (usize, Vec<usize>) {
        let a = Arc::new(a);
        let st = analyze(&a).unwrap();
        let mut d: Vec<usize> = (0..st.simple_count()).map(|c| st.simple_dim(c)).collect();
        d.sort();
        (st.radical.dim(), d)
    }

    #[test]
    fn matrix_algebra_is_simple() {
        let m2 = matrix_algebra(&Algebra::ground(q()), 2).unwrap();
        assert_eq!(dims(m2), (0, vec![2]));
    }

    #[test]
    fn dual_numbers() {
        let a = quotient_poly_algebra(&Poly::from_i64(q(), &[0, 0, 1])).unwrap();
        assert_eq!(dims(a), (1, vec![1]));
    }

    #[test]
    fn upper_triangular_two() {
        assert_eq!(dims(upper_triangular(2, q()).unwrap()), (1, vec![1, 1]));
        let f11 = FieldSpec::prime(11).unwrap();
        assert_eq!(dims(upper_triangular(3, f11).unwrap()), (3, vec![1, 1, 1]));
    }

    #[test]
    fn split_and_field_quotients() {
        let split = quotient_poly_algebra(&Poly::from_i64(q(), &[-1, 0, 1])).unwrap();
        assert_eq!(dims(split), (0, vec![1, 1]));
        let field = quotient_poly_algebra(&Poly::from_i64(q(), &[-2, 0, 1])).unwrap();
        assert_eq!(dims(field), (0, vec![2]));
    }

    #[test]
    fn group_algebras() {
        assert_eq!(dims(group_algebra(&CayleyTable::symmetric3(), q()).unwrap()), (0, vec![1, 1, 2]));
        // ℚC3 ≅ ℚ × ℚ(ω)
        assert_eq!(dims(group_algebra(&CayleyTable::cyclic(3), q()).unwrap()), (0, vec![1, 2]));
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(dims(group_algebra(&CayleyTable::cyclic(3), f7).unwrap()), (0, vec![1, 1, 1]));
    }

    #[test]
    fn commutative_small_characteristic_uses_frobenius() {
        let f2 = FieldSpec::prime(2).unwrap();
        let a = Arc::new(group_algebra(&CayleyTable::cyclic(2), f2).unwrap());
        let st = analyze(&a).unwrap();
        assert_eq!(st.trace_source, TraceSource::Frobenius(1));
        assert_eq!((st.radical.dim(), st.simple_count()), (1, 1));
        let f3 = FieldSpec::prime(3).unwrap();
        let b = Arc::new(group_algebra(&CayleyTable::cyclic(3), f3).unwrap());
        assert_eq!(analyze(&b).unwrap().radical.dim(), 2);
    }

    #[test]
    fn degenerate_trace_form_is_rejected() {
        let f2 = FieldSpec::prime(2).unwrap();
        let m = Arc::new(matrix_algebra(&Algebra::ground(f2), 2).unwrap());
        assert!(matches!(analyze(&m), Err(Error::UnsupportedCharacteristic { .. })));
    }

    #[test]
    fn faithful_representation_unlocks_small_characteristic() {
        let f2 = FieldSpec::prime(2).unwrap();
        // the regular trace form of M₂(GF(2)) vanishes; the natural one does not
        let m = Arc::new(matrix_algebra_represented(&Algebra::ground(f2), 2).unwrap());
        let st = analyze(&m).unwrap();
        assert_eq!(st.trace_source, TraceSource::Faithful(2));
        assert_eq!((st.radical.dim(), st.simple_count(), st.simple_dim(0)), (0, 1, 2));

        let f5 = FieldSpec::prime(5).unwrap();
        let a = quotient_poly_algebra(&Poly::from_i64(f5, &[0, 0, 1])).unwrap();
        let m = Arc::new(matrix_algebra_represented(&a, 2).unwrap());
        let st = analyze(&m).unwrap();
        assert_eq!(st.trace_source, TraceSource::Faithful(4));
        assert_eq!(st.radical.dim(), 4);
        assert_eq!(st.simple_count(), 1);
        assert_eq!(st.simple_dim(0), 2);
    }

    #[test]
    fn idempotents_are_idempotent() {
        let a = Arc::new(upper_triangular(3, q()).unwrap());
        let st = analyze(&a).unwrap();
        for e in &st.idempotents {
            assert_eq!(a.mul(e, e), *e);
        }
        assert_eq!(st.multiplicities, vec![1, 1, 1]);
    }
}
