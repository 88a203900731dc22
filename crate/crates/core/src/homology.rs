//! Projective resolutions with termination certificates, projective/global/weak dimension,
//! Ext and Tor with explicit bases, and the restriction maps between a crossed product
//! and its base algebra.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraMap};
use crate::crossed::CrossedSystem;
use crate::linalg::{FieldSpec, Matrix, Quotient, Scalar, Subspace};
use crate::module::{find_isomorphism, hom_space, is_projective, projective_cover, IsoSearch, Module};
use crate::structure::{self, Structure};
use crate::Error;

pub const DEFAULT_CAP: usize = 8;

/// Why a periodic resolution certifies infinite projective dimension: Ω^second ≅ Ω^first
/// with Ω^first not projective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    pub first: usize,
    pub second: usize,
}

/// A homological dimension: exact, certified infinite, or a lower bound from a capped
/// computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Dimension {
    Finite(usize),
    Infinite(Periodicity),
    AtLeast(usize),
}

impl Dimension {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Dimension::AtLeast(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Dimension::Infinite(_))
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            Dimension::Finite(n) => Some(*n),
            _ => None,
        }
    }

    /// Order between certified values; `None` whenever a lower bound is involved.
    pub fn compare(&self, other: &Dimension) -> Option<Ordering> {
        use Dimension::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(a.cmp(b)),
            (Infinite(_), Infinite(_)) => Some(Ordering::Equal),
            (Finite(_), Infinite(_)) => Some(Ordering::Less),
            (Infinite(_), Finite(_)) => Some(Ordering::Greater),
            _ => None,
        }
    }

    /// Supremum of a family of dimensions.
    pub fn max_of(dims: impl IntoIterator<Item = Dimension>) -> Dimension {
        let mut best_finite = 0;
        let mut bound: Option<usize> = None;
        for d in dims {
            match d {
                Dimension::Infinite(p) => return Dimension::Infinite(p),
                Dimension::Finite(n) => best_finite = best_finite.max(n),
                Dimension::AtLeast(n) => bound = Some(bound.map_or(n, |b: usize| b.max(n))),
            }
        }
        match bound {
            Some(b) => Dimension::AtLeast(b.max(best_finite)),
            None => Dimension::Finite(best_finite),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite(p) => write!(f, "inf (syzygy {} ≅ syzygy {})", p.second, p.first),
            Dimension::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Termination {
    /// Ω^{L+1} = 0 (or P_L is the projective syzygy itself).
    Projective(usize),
    Periodic { first: usize, second: usize, iso: Matrix },
    Capped(usize),
}

/// A projective resolution ··· → P_1 → P_0 → M. `differentials[0]` is the augmentation
/// P_0 → M and `differentials[n]` maps P_n → P_{n−1}. `syzygies[n]` is Ω^n with its
/// inclusion into P_{n−1} (Ω^0 = M with the identity).
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Module,
    pub terms: Vec<Module>,
    /// Simple type of each summand A·e_c of P_n; empty for a projective syzygy used as
    /// the last term.
    pub summands: Vec<Vec<usize>>,
    pub differentials: Vec<Matrix>,
    pub syzygies: Vec<(Module, Matrix)>,
    pub termination: Termination,
    structure: Option<Arc<Structure>>,
}

impl Resolution {
    pub fn new(m: &Module, cap: usize) -> Resolution {
        let structure = structure::analyze(m.algebra()).ok();
        let identity = Matrix::identity(m.field(), m.dim());
        let mut res = Resolution {
            module: m.clone(),
            terms: Vec::new(),
            summands: Vec::new(),
            differentials: Vec::new(),
            syzygies: vec![(m.clone(), identity)],
            termination: Termination::Capped(cap),
            structure,
        };
        if res.structure.is_none() && res.close_if_projective(0) {
            return res;
        }
        for n in 0..=cap {
            res.push_term();
            let next = n + 1;
            let syz = &res.syzygies[next].0;
            if syz.dim() == 0 {
                res.termination = Termination::Projective(n);
                return res;
            }
            if res.structure.is_none() && res.close_if_projective(next) {
                return res;
            }
            for i in 0..next {
                if let IsoSearch::Isomorphic(iso) = find_isomorphism(&res.syzygies[i].0, &res.syzygies[next].0) {
                    res.termination = Termination::Periodic { first: i, second: next, iso };
                    return res;
                }
            }
        }
        res.termination = Termination::Capped(cap);
        res
    }

    pub fn is_minimal(&self) -> bool {
        self.structure.is_some()
    }

    /// Free-cover mode only: ends the resolution with Ω^n as its last term when it is
    /// projective.
    fn close_if_projective(&mut self, n: usize) -> bool {
        let (syz, inc) = self.syzygies[n].clone();
        if !is_projective(&syz).0 {
            return false;
        }
        let field = syz.field();
        self.terms.push(syz.clone());
        self.summands.push(Vec::new());
        self.differentials.push(inc);
        self.syzygies.push((Module::zero(syz.algebra().clone()), Matrix::zeros(field, syz.dim(), 0)));
        self.termination = Termination::Projective(n);
        true
    }

    /// Covers the last syzygy and records the next one.
    fn push_term(&mut self) {
        let n = self.terms.len();
        let (syz, inc) = self.syzygies[n].clone();
        let (cover, types, pi) = projective_cover(&syz, self.structure.as_deref());
        let kernel = Subspace::column_span(&pi.kernel());
        let (next, next_inc) = cover.submodule(&kernel).expect("kernel of a module map is a submodule");
        self.differentials.push(inc.mul(&pi));
        self.terms.push(cover);
        self.summands.push(types);
        self.syzygies.push((next, next_inc));
    }

    /// Number of computed terms P_0..P_{len−1}.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Makes P_0..P_n available, extending a periodic resolution past its cap.
    pub fn ensure(&mut self, n: usize) -> Result<(), Error> {
        match self.termination {
            Termination::Projective(_) => Ok(()),
            Termination::Periodic { .. } => {
                while self.terms.len() <= n {
                    self.push_term();
                }
                Ok(())
            }
            Termination::Capped(_) if n < self.terms.len() => Ok(()),
            Termination::Capped(_) => Err(Error::ResolutionTooShort {
                needed: n,
                available: self.terms.len().saturating_sub(1),
            }),
        }
    }

    /// P_n; the zero module past the end of a finite resolution.
    pub fn term(&self, n: usize) -> Module {
        self.terms.get(n).cloned().unwrap_or_else(|| Module::zero(self.module.algebra().clone()))
    }

    /// d_n: P_n → P_{n−1} for n ≥ 1, the augmentation for n = 0.
    pub fn differential(&self, n: usize) -> Matrix {
        if let Some(d) = self.differentials.get(n) {
            return d.clone();
        }
        let field = self.module.field();
        let target = if n == 0 { self.module.dim() } else { self.term(n - 1).dim() };
        Matrix::zeros(field, target, self.term(n).dim())
    }

    pub fn projective_dimension(&self) -> Dimension {
        match &self.termination {
            Termination::Projective(l) => Dimension::Finite(*l),
            Termination::Periodic { first, second, .. } => {
                Dimension::Infinite(Periodicity { first: *first, second: *second })
            }
            Termination::Capped(cap) => Dimension::AtLeast(cap + 1),
        }
    }

    /// Exactness at every computed position: d_{n}∘d_{n+1} = 0 and rank equalities.
    pub fn verify_exact(&self) -> bool {
        let m = &self.module;
        if self.terms.is_empty() {
            return m.dim() == 0;
        }
        if self.differentials[0].rank() != m.dim() {
            return false;
        }
        for n in 0..self.terms.len() {
            let dn = &self.differentials[n];
            let kernel_dim = self.terms[n].dim() - dn.rank();
            let image_dim = if n + 1 < self.terms.len() { self.differentials[n + 1].rank() } else { self.syzygies[n + 1].0.dim() };
            if kernel_dim != image_dim {
                return false;
            }
            if n + 1 < self.terms.len() && !dn.mul(&self.differentials[n + 1]).is_zero() {
                return false;
            }
            let source = if n == 0 { m } else { &self.terms[n - 1] };
            if !self.terms[n].is_homomorphism(source, dn) {
                return false;
            }
        }
        true
    }
}

pub fn free_resolution(m: &Module, cap: usize) -> Resolution {
    Resolution::new(m, cap)
}

pub fn pd(m: &Module, cap: usize) -> Dimension {
    Resolution::new(m, cap).projective_dimension()
}

/// Maximum of pd over the simple modules.
pub fn gldim(a: &Arc<Algebra>, cap: usize) -> Result<Dimension, Error> {
    let st = structure::analyze(a)?;
    Ok(Dimension::max_of(st.simple_modules(a).iter().map(|s| pd(s, cap))))
}

/// Largest n with Tor_n(S, T) ≠ 0 over right simples S and left simples T, checked
/// against the global dimension.
pub fn wdim(a: &Arc<Algebra>, cap: usize) -> Result<Dimension, Error> {
    let st = structure::analyze(a)?;
    let op = Arc::new(a.opposite());
    let st_op = structure::analyze(&op)?;
    let lefts = st.simple_modules(a);
    let mut per_simple = Vec::new();
    for s in st_op.simple_modules(&op) {
        let mut res = Resolution::new(&s, cap);
        let (top, infinite_from) = match &res.termination {
            Termination::Projective(l) => (*l, None),
            Termination::Periodic { first, second, .. } => (*second, Some((*first, *second))),
            Termination::Capped(c) => (c.saturating_sub(1), None),
        };
        res.ensure(top + 1)?;
        let mut highest: Option<usize> = None;
        let mut periodic_hit = false;
        for n in 0..=top {
            for t in &lefts {
                if tor_from_resolution(&res, t, n)?.dim > 0 {
                    highest = Some(highest.map_or(n, |h| h.max(n)));
                    if let Some((i, j)) = infinite_from {
                        if n > i && n <= j {
                            periodic_hit = true;
                        }
                    }
                    break;
                }
            }
        }
        per_simple.push(match (&res.termination, infinite_from) {
            (_, Some((first, second))) if periodic_hit => Dimension::Infinite(Periodicity { first, second }),
            (Termination::Capped(_), _) => Dimension::AtLeast(highest.unwrap_or(0)),
            _ => Dimension::Finite(highest.unwrap_or(0)),
        });
    }
    let w = Dimension::max_of(per_simple);
    let g = gldim(a, cap)?;
    if w.is_certified() && g.is_certified() && w.compare(&g) != Some(Ordering::Equal) {
        return Err(Error::InternalInconsistency(format!("weak dimension {w} differs from global dimension {g}")));
    }
    Ok(w)
}

/// A cohomology space with representative cocycles. Cochains live in Hom_k(P_n, N),
/// vectorized row-major.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<Matrix>,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
}

/// Cochain complex data in degree n: Z^n and B^n inside Hom_k(P_n, N), for the
/// equivariance given by `hom` (which computes a basis of the relevant Hom).
fn cohomology(
    res: &Resolution,
    n: usize,
    hom: impl Fn(&Module) -> Vec<Matrix>,
    field: FieldSpec,
    target_dim: usize,
) -> (Subspace, Subspace) {
    let pn = res.term(n);
    let ambient = target_dim * pn.dim();
    let cochains = hom(&pn);
    // Z^n: φ with φ∘d_{n+1} = 0
    let d_next = res.differential(n + 1);
    let images: Vec<_> = cochains.iter().map(|phi| phi.mul(&d_next).vectorize()).collect();
    let rows = target_dim * d_next.cols();
    let z = if cochains.is_empty() {
        Subspace::zero(field, ambient)
    } else {
        let kernel = Matrix::from_columns(field, rows, &images).kernel();
        Subspace::span(
            field,
            ambient,
            kernel.columns().into_iter().map(|c| {
                let mut acc = Matrix::zeros(field, target_dim, pn.dim());
                for (coef, phi) in c.iter().zip(&cochains) {
                    acc.add_scaled(coef, phi);
                }
                acc.vectorize()
            }),
        )
    };
    // B^n: ψ∘d_n for ψ ∈ Hom(P_{n−1}, N)
    let b = if n == 0 {
        Subspace::zero(field, ambient)
    } else {
        let prev = res.term(n - 1);
        let dn = res.differential(n);
        Subspace::span(field, ambient, hom(&prev).iter().map(|psi| psi.mul(&dn).vectorize()))
    };
    (z, b)
}

/// Representatives of Z/B: members of Z that extend a basis of B.
fn complement_in(z: &Subspace, b: &Subspace) -> Vec<Vec<Scalar>> {
    let mut acc = b.clone();
    let mut reps = Vec::new();
    for v in z.basis() {
        if acc.insert(v.clone()) {
            reps.push(v.clone());
        }
    }
    reps
}

pub fn ext_from_resolution(res: &Resolution, n_mod: &Module, n: usize) -> ExtSpace {
    let field = n_mod.field();
    let (z, b) = cohomology(res, n, |p| hom_space(p, n_mod), field, n_mod.dim());
    let pn_dim = res.term(n).dim();
    let basis: Vec<Matrix> = complement_in(&z, &b)
        .into_iter()
        .map(|v| Matrix::from_vector(field, n_mod.dim(), pn_dim, v))
        .collect();
    ExtSpace { degree: n, dim: basis.len(), basis, cocycles: z, coboundaries: b }
}

/// Ext^n_A(M, N) from a projective resolution of M.
pub fn ext(m: &Module, n_mod: &Module, n: usize, cap: usize) -> Result<ExtSpace, Error> {
    let mut res = Resolution::new(m, cap);
    res.ensure(n + 1)?;
    Ok(ext_from_resolution(&res, n_mod, n))
}

/// A homology space of P ⊗_A N with representative cycles in the coordinates of the
/// n-th tensored term.
#[derive(Clone, Debug)]
pub struct TorSpace {
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<Vec<Scalar>>,
    pub cycles: Subspace,
    pub boundaries: Subspace,
}

/// X ⊗_A Y as a quotient of X ⊗_k Y (index i·dim Y + j) by the balancing span of
/// x·a ⊗ y − x ⊗ a·y over the given algebra elements. X is a module over the opposite
/// algebra, so x·a is ρ_X(a)x.
pub fn tensor_quotient(x: &Module, y: &Module, elements: &[Vec<Scalar>]) -> Quotient {
    let field = y.field();
    let ambient = x.dim() * y.dim();
    let mut w = Subspace::zero(field, ambient);
    for a in elements {
        let balance = x.rho(a).kron(&Matrix::identity(field, y.dim())).sub(&Matrix::identity(field, x.dim()).kron(&y.rho(a)));
        for col in balance.columns() {
            w.insert(col);
        }
    }
    w.quotient()
}

fn generator_elements(a: &Algebra) -> Vec<Vec<Scalar>> {
    a.generators().iter().map(|&g| a.basis_vec(g)).collect()
}

/// Chain complex T_n = P_n ⊗ N / W_n with its induced differentials.
struct TensorComplex {
    quotients: Vec<Quotient>,
}

impl TensorComplex {
    fn build(res: &Resolution, n_mod: &Module, elements: &[Vec<Scalar>], upto: usize) -> Self {
        let quotients = (0..=upto).map(|k| tensor_quotient(&res.term(k), n_mod, elements)).collect();
        TensorComplex { quotients }
    }

    /// ∂_k: T_k → T_{k−1}; zero for k = 0.
    fn boundary(&self, res: &Resolution, n_mod: &Module, k: usize) -> Matrix {
        let field = n_mod.field();
        if k == 0 {
            return Matrix::zeros(field, 0, self.quotients[0].dim());
        }
        let lifted = res.differential(k).kron(&Matrix::identity(field, n_mod.dim()));
        self.quotients[k - 1].projection.mul(&lifted).mul(&self.quotients[k].complement)
    }

    fn homology(&self, res: &Resolution, n_mod: &Module, n: usize) -> TorSpace {
        let cycles = Subspace::column_span(&self.boundary(res, n_mod, n).kernel());
        let boundaries = Subspace::column_span(&self.boundary(res, n_mod, n + 1));
        let basis = complement_in(&cycles, &boundaries);
        debug_assert!(cycles.contains_subspace(&boundaries));
        TorSpace { degree: n, dim: basis.len(), basis, cycles, boundaries }
    }
}

pub fn tor_from_resolution(res: &Resolution, n_mod: &Module, n: usize) -> Result<TorSpace, Error> {
    let elements = generator_elements(n_mod.algebra());
    let complex = TensorComplex::build(res, n_mod, &elements, n + 1);
    Ok(complex.homology(res, n_mod, n))
}

/// Tor^A_n(M, N) for a right module M given as a left module over the opposite algebra.
pub fn tor(mop: &Module, n_mod: &Module, n: usize, cap: usize) -> Result<TorSpace, Error> {
    if mop.algebra().dim() != n_mod.algebra().dim() {
        return Err(Error::Malformed("Tor needs modules over opposite algebras of the same dimension".into()));
    }
    let mut res = Resolution::new(mop, cap);
    res.ensure(n + 1)?;
    tor_from_resolution(&res, n_mod, n)
}

/// The map Ext^n over the crossed product → Ext^n over R induced by restriction.
#[derive(Clone, Debug)]
pub struct ExtRestriction {
    pub degree: usize,
    pub dim_product: usize,
    pub dim_base: usize,
    /// Columns: images of the product-side basis in base-side coordinates.
    pub matrix: Matrix,
    pub rank: usize,
    pub injective: bool,
}

pub fn ext_restriction_map(
    sys: &CrossedSystem,
    m: &Module,
    n_mod: &Module,
    n: usize,
    cap: usize,
) -> Result<ExtRestriction, Error> {
    if !sys.hopf().is_semisimple().0 {
        return Err(Error::NotSemisimple);
    }
    let field = m.field();
    let mut res = Resolution::new(m, cap);
    res.ensure(n + 1)?;
    let embed = &sys.embed_r;
    let (z_b, b_b) = cohomology(&res, n, |p| hom_space(p, n_mod), field, n_mod.dim());
    let n_r = n_mod.restrict(embed);
    let (z_r, b_r) = cohomology(&res, n, |p| hom_space(&p.restrict(embed), &n_r), field, n_mod.dim());
    if !z_r.contains_subspace(&z_b) || !b_r.contains_subspace(&b_b) {
        return Err(Error::InternalInconsistency("restriction is not a cochain map".into()));
    }
    let reps_b = complement_in(&z_b, &b_b);
    let reps_r = complement_in(&z_r, &b_r);
    let rank = z_b.sum(&b_r).dim() - b_r.dim();
    // coordinates of each product-side class in the base-side representatives
    let mut cols = Vec::new();
    let basis_r: Vec<Vec<Scalar>> = reps_r.iter().cloned().chain(b_r.basis().iter().cloned()).collect();
    let ambient = n_mod.dim() * res.term(n).dim();
    for v in &reps_b {
        let system = Matrix::from_columns(field, ambient, &basis_r);
        let sol = system
            .solve(&Matrix::column_vector(field, v.clone()))
            .map_err(|_| Error::InternalInconsistency("cocycle outside the base cocycles".into()))?;
        cols.push(sol.column(0)[..reps_r.len()].to_vec());
    }
    let matrix = Matrix::from_columns(field, reps_r.len(), &cols);
    if matrix.rank() != rank {
        return Err(Error::InternalInconsistency("rank of the Ext map disagrees with the subspace count".into()));
    }
    Ok(ExtRestriction {
        degree: n,
        dim_product: reps_b.len(),
        dim_base: reps_r.len(),
        matrix,
        rank,
        injective: rank == reps_b.len(),
    })
}

/// ξ_*: Tor^R_n(M, N) → Tor^{product}_n(M, N) induced by the canonical surjections
/// P ⊗_R N → P ⊗_{product} N.
#[derive(Clone, Debug)]
pub struct TorComparison {
    pub degree: usize,
    pub dim_base: usize,
    pub dim_product: usize,
    pub matrix: Matrix,
    pub rank: usize,
    /// ∂^{product}_k ξ_k = ξ_{k−1} ∂^R_k held exactly for k ≤ degree + 1.
    pub chain_map: bool,
}

pub fn tor_comparison_map(
    sys: &CrossedSystem,
    mop: &Module,
    n_mod: &Module,
    n: usize,
    cap: usize,
) -> Result<TorComparison, Error> {
    let field = n_mod.field();
    let mut res = Resolution::new(mop, cap);
    res.ensure(n + 1)?;
    let product = sys.product();
    let base_elements: Vec<Vec<Scalar>> =
        generator_elements(sys.base()).iter().map(|r| sys.embed_r.apply(r)).collect();
    let product_elements = generator_elements(product);
    let over_r = TensorComplex::build(&res, n_mod, &base_elements, n + 1);
    let over_b = TensorComplex::build(&res, n_mod, &product_elements, n + 1);
    // ξ_k = q^B_k ∘ complement^R_k
    let xi: Vec<Matrix> = (0..=n + 1)
        .map(|k| over_b.quotients[k].projection.mul(&over_r.quotients[k].complement))
        .collect();
    let mut chain_map = true;
    for k in 1..=n + 1 {
        let lhs = over_b.boundary(&res, n_mod, k).mul(&xi[k]);
        let rhs = xi[k - 1].mul(&over_r.boundary(&res, n_mod, k));
        if lhs != rhs {
            chain_map = false;
        }
    }
    let tor_r = over_r.homology(&res, n_mod, n);
    let tor_b = over_b.homology(&res, n_mod, n);
    let dim_b_term = over_b.quotients[n].dim();
    let basis_b: Vec<Vec<Scalar>> = tor_b.basis.iter().cloned().chain(tor_b.boundaries.basis().iter().cloned()).collect();
    let system = Matrix::from_columns(field, dim_b_term, &basis_b);
    let mut cols = Vec::new();
    for z in &tor_r.basis {
        let image = xi[n].mul_vec(z);
        let sol = system
            .solve(&Matrix::column_vector(field, image))
            .map_err(|_| Error::InternalInconsistency("ξ does not map cycles to cycles".into()))?;
        cols.push(sol.column(0)[..tor_b.dim].to_vec());
    }
    let matrix = Matrix::from_columns(field, tor_b.dim, &cols);
    let rank = matrix.rank();
    Ok(TorComparison { degree: n, dim_base: tor_r.dim, dim_product: tor_b.dim, matrix, rank, chain_map })
}

/// The restriction map on the opposite side: the embedding viewed between opposite
/// algebras, with the product's opposite taken from the system.
pub fn opposite_embedding(sys: &CrossedSystem) -> AlgebraMap {
    AlgebraMap {
        source: sys.base_op().clone(),
        target: sys.product_op().clone(),
        matrix: sys.embed_r.matrix.clone(),
    }
}
