//! Crossed products R #_σ H: measuring actions, cocycles, the product algebra, the maps
//! γ and γ⁻¹, averaging by a normalized integral, and smash products with H*.

use std::sync::Arc;

use crate::algebra::{validate_algebra, Algebra, AlgebraMap, CayleyTable};
use crate::hopf::{group_hopf, HopfAlgebra};
use crate::linalg::{axpy, zero_vec, Matrix, Scalar};
use crate::module::Module;
use crate::{Certificate, Error, Violation};

/// h·e_r = Σ_{r'} a[h][r][r'] e_{r'}; stored as one dim R × dim R matrix per basis h with
/// h·e_r in column r.
#[derive(Clone, Debug)]
pub struct MeasuringAction {
    hopf: Arc<HopfAlgebra>,
    base: Arc<Algebra>,
    act: Vec<Matrix>,
}

impl MeasuringAction {
    pub fn new(
        hopf: Arc<HopfAlgebra>,
        base: Arc<Algebra>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self, Error> {
        let (dh, dr) = (hopf.dim(), base.dim());
        let field = base.field();
        if hopf.field() != field {
            return Err(Error::Malformed("R and H are over different fields".into()));
        }
        let mut act = vec![Matrix::zeros(field, dr, dr); dh];
        for (h, r, s, c) in entries {
            if h >= dh || r >= dr || s >= dr {
                return Err(Error::Malformed(format!("action index ({h},{r},{s}) out of range")));
            }
            act[h].entry_mut(s, r).add_assign_ref(&c);
        }
        let action = MeasuringAction { hopf, base, act };
        action.check().map_err(|v| Error::NotMeasuring(format!("{} on basis {:?}", v.detail, v.witness)))?;
        Ok(action)
    }

    /// h·b = ε(h)b.
    pub fn trivial(hopf: Arc<HopfAlgebra>, base: Arc<Algebra>) -> Self {
        let dr = base.dim();
        let act = hopf
            .counit()
            .iter()
            .map(|e| Matrix::identity(base.field(), dr).scale(e))
            .collect();
        MeasuringAction { hopf, base, act }
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }

    /// The matrix of b ↦ h·b for the basis element h.
    pub fn matrix(&self, h: usize) -> &Matrix {
        &self.act[h]
    }

    /// h·b for coordinate vectors h ∈ H, b ∈ R.
    pub fn apply(&self, h: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.base.zero();
        for (i, c) in h.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.act[i].mul_vec(b));
            }
        }
        out
    }

    fn check(&self) -> Result<(), Violation> {
        let (h, r) = (&self.hopf, &self.base);
        let (dh, dr) = (h.dim(), r.dim());
        let one_h = h.algebra().unit();
        for b in 0..dr {
            let eb = r.basis_vec(b);
            if self.apply(one_h, &eb) != eb {
                return Err(Violation::new("measuring-unit", vec![b], format!("1·e{b} ≠ e{b}")));
            }
        }
        for x in 0..dh {
            let expected: Vec<Scalar> = r.unit().iter().map(|u| u * &h.counit()[x]).collect();
            if self.act[x].mul_vec(r.unit()) != expected {
                return Err(Violation::new("measuring-counit", vec![x], format!("h{x}·1 ≠ ε(h{x})1")));
            }
        }
        for x in 0..dh {
            let delta = h.coproduct_of_basis(x);
            for b in 0..dr {
                for c in 0..dr {
                    let (eb, ec) = (r.basis_vec(b), r.basis_vec(c));
                    let lhs = self.act[x].mul_vec(&r.mul(&eb, &ec));
                    let mut rhs = r.zero();
                    for (j, k, d) in delta {
                        let prod = r.mul(&self.act[*j].mul_vec(&eb), &self.act[*k].mul_vec(&ec));
                        axpy(&mut rhs, d, &prod);
                    }
                    if lhs != rhs {
                        return Err(Violation::new(
                            "measuring",
                            vec![x, b, c],
                            format!("h{x}·(e{b}e{c}) ≠ Σ (h₁·e{b})(h₂·e{c})"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// σ(h, g) = Σ_r s[h][g][r] e_r with its convolution inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    /// `sigma[h * dim H + g]` is σ(e_h, e_g) ∈ R.
    pub sigma: Vec<Vec<Scalar>>,
    pub sigma_inv: Vec<Vec<Scalar>>,
}

impl Cocycle {
    pub fn value(&self, dh: usize, h: usize, g: usize) -> &[Scalar] {
        &self.sigma[h * dh + g]
    }

    pub fn inverse_value(&self, dh: usize, h: usize, g: usize) -> &[Scalar] {
        &self.sigma_inv[h * dh + g]
    }
}

/// Cocycle data before validation: entries (h, g, r, c) with σ(e_h, e_g) ∋ c·e_r.
pub fn cocycle_table(
    hopf: &HopfAlgebra,
    base: &Algebra,
    entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
) -> Result<Vec<Vec<Scalar>>, Error> {
    let (dh, dr) = (hopf.dim(), base.dim());
    let mut sigma = vec![zero_vec(base.field(), dr); dh * dh];
    for (h, g, r, c) in entries {
        if h >= dh || g >= dh || r >= dr {
            return Err(Error::Malformed(format!("cocycle index ({h},{g},{r}) out of range")));
        }
        sigma[h * dh + g][r].add_assign_ref(&c);
    }
    Ok(sigma)
}

/// σ(h, g) = ε(h)ε(g)1.
pub fn trivial_cocycle(hopf: &HopfAlgebra, base: &Algebra) -> Vec<Vec<Scalar>> {
    let dh = hopf.dim();
    let mut out = Vec::with_capacity(dh * dh);
    for h in 0..dh {
        for g in 0..dh {
            let e = &hopf.counit()[h] * &hopf.counit()[g];
            out.push(base.unit().iter().map(|u| u * &e).collect());
        }
    }
    out
}

/// Bilinear extension of a table f(e_h, e_g) to coordinate vectors.
fn bilinear(table: &[Vec<Scalar>], dh: usize, dr: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let field = x[0].field();
    let mut out = zero_vec(field, dr);
    for (h, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (g, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            axpy(&mut out, &(a * b), &table[h * dh + g]);
        }
    }
    out
}

/// Σ f(h₁, g₁) g(h₂, g₂) for two tables, evaluated on basis elements (h, g).
fn convolve(hopf: &HopfAlgebra, base: &Algebra, f: &[Vec<Scalar>], g: &[Vec<Scalar>], h: usize, k: usize) -> Vec<Scalar> {
    let dh = hopf.dim();
    let mut out = base.zero();
    for (h1, h2, c1) in hopf.coproduct_of_basis(h) {
        for (k1, k2, c2) in hopf.coproduct_of_basis(k) {
            let prod = base.mul(&f[h1 * dh + k1], &g[h2 * dh + k2]);
            axpy(&mut out, &(c1 * c2), &prod);
        }
    }
    out
}

/// A validated crossed product with its structure maps.
#[derive(Clone, Debug)]
pub struct CrossedSystem {
    pub action: MeasuringAction,
    pub cocycle: Cocycle,
    pub product: Arc<Algebra>,
    pub product_op: Arc<Algebra>,
    pub base_op: Arc<Algebra>,
    /// a ↦ a#1
    pub embed_r: AlgebraMap,
    /// dim B × dim H, h ↦ 1#h
    pub gamma: Matrix,
    /// dim B × dim H, the convolution inverse of γ
    pub gamma_inv: Matrix,
}

impl CrossedSystem {
    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        self.action.hopf()
    }

    pub fn base(&self) -> &Arc<Algebra> {
        self.action.base()
    }

    pub fn product(&self) -> &Arc<Algebra> {
        &self.product
    }

    pub fn product_op(&self) -> &Arc<Algebra> {
        &self.product_op
    }

    pub fn base_op(&self) -> &Arc<Algebra> {
        &self.base_op
    }

    /// Basis index of e_r # e_h in the product.
    pub fn index(&self, r: usize, h: usize) -> usize {
        r * self.hopf().dim() + h
    }

    /// Coordinates of a#h for a ∈ R, h ∈ H.
    pub fn pure_tensor(&self, a: &[Scalar], h: &[Scalar]) -> Vec<Scalar> {
        let dh = self.hopf().dim();
        let mut out = self.product.zero();
        for (r, x) in a.iter().enumerate() {
            for (g, y) in h.iter().enumerate() {
                if !x.is_zero() && !y.is_zero() {
                    out[r * dh + g] = x * y;
                }
            }
        }
        out
    }

    pub fn gamma_of(&self, h: &[Scalar]) -> Vec<Scalar> {
        self.gamma.mul_vec(h)
    }

    pub fn gamma_inv_of(&self, h: &[Scalar]) -> Vec<Scalar> {
        self.gamma_inv.mul_vec(h)
    }

    /// The restriction of product modules to R.
    pub fn restrict_to_base(&self, m: &Module) -> Module {
        m.restrict(&self.embed_r)
    }

    /// The restriction of right product modules (left modules over the opposite) to the
    /// opposite of R.
    pub fn restrict_to_base_op(&self, m: &Module) -> Module {
        m.restrict(&crate::homology::opposite_embedding(self))
    }
}

/// Builds R #_σ H from the product formula (a#h)(b#g) = Σ a(h₁·b)σ(h₂, g₁) # h₃g₂.
pub fn build_crossed(action: MeasuringAction, sigma: Vec<Vec<Scalar>>) -> Result<CrossedSystem, Error> {
    let hopf = action.hopf().clone();
    let base = action.base().clone();
    let field = base.field();
    let (dh, dr) = (hopf.dim(), base.dim());
    if sigma.len() != dh * dh || sigma.iter().any(|v| v.len() != dr) {
        return Err(Error::Malformed("cocycle table has the wrong shape".into()));
    }
    check_normal(&hopf, &base, &sigma)?;
    let sigma_inv = solve_convolution_inverse(&hopf, &base, &sigma)?;
    let dim = dr * dh;
    let hmul = hopf.algebra();

    let names: Vec<String> = (0..dr)
        .flat_map(|r| {
            let (b, h) = (&base, &hopf);
            (0..dh).map(move |g| format!("{}#{}", b.basis_names()[r], h.algebra().basis_names()[g]))
        })
        .collect();
    let mut consts = Vec::new();
    for h in 0..dh {
        let triple = hopf.double_coproduct_terms(&hmul.basis_vec(h));
        for g in 0..dh {
            let delta_g = hopf.coproduct_of_basis(g);
            for b in 0..dr {
                // Σ (h₁·b) σ(h₂, g₁) ⊗ h₃g₂, as an R ⊗ H table
                let mut table = vec![zero_vec(field, dh); dr];
                for (h1, h2, h3, c) in &triple {
                    let moved = action.matrix(*h1).column(b);
                    for (g1, g2, d) in delta_g {
                        let rs = base.mul(&moved, &sigma[h2 * dh + g1]);
                        let coeff = c * d;
                        for (k, hk) in hmul.basis_product(*h3, *g2) {
                            let s = &coeff * hk;
                            for (r, x) in rs.iter().enumerate() {
                                if !x.is_zero() {
                                    table[r][*k].add_mul_assign(&s, x);
                                }
                            }
                        }
                    }
                }
                for a in 0..dr {
                    for (r, row) in table.iter().enumerate() {
                        if row.iter().all(Scalar::is_zero) {
                            continue;
                        }
                        for (t, ar) in base.basis_product(a, r) {
                            for (k, x) in row.iter().enumerate() {
                                if !x.is_zero() {
                                    consts.push((a * dh + h, b * dh + g, t * dh + k, ar * x));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![field.zero(); dim];
    for (r, x) in base.unit().iter().enumerate() {
        for (g, y) in hmul.unit().iter().enumerate() {
            unit[r * dh + g] = x * y;
        }
    }
    let product = Algebra::new(field, names, unit, consts)?;
    if let Err(v) = validate_algebra(&product) {
        return Err(Error::NotAssociative { triple: v.witness, detail: format!("{}: {}", v.check, v.detail) });
    }
    let product = Arc::new(product);

    let mut embed = Matrix::zeros(field, dim, dr);
    for r in 0..dr {
        for (g, y) in hmul.unit().iter().enumerate() {
            embed.set(r * dh + g, r, y.clone());
        }
    }
    let embed_r = AlgebraMap::new(base.clone(), product.clone(), embed)?;
    let mut gamma = Matrix::zeros(field, dim, dh);
    for h in 0..dh {
        for (r, x) in base.unit().iter().enumerate() {
            gamma.set(r * dh + h, h, x.clone());
        }
    }
    let gamma_inv = solve_gamma_inverse(&hopf, &product, &gamma)?;
    let product_op = Arc::new(product.opposite());
    let base_op = Arc::new(base.opposite());
    Ok(CrossedSystem {
        action,
        cocycle: Cocycle { sigma, sigma_inv },
        product,
        product_op,
        base_op,
        embed_r,
        gamma,
        gamma_inv,
    })
}

fn check_normal(hopf: &HopfAlgebra, base: &Algebra, sigma: &[Vec<Scalar>]) -> Result<(), Error> {
    let (dh, dr) = (hopf.dim(), base.dim());
    let one = hopf.algebra().unit();
    for h in 0..dh {
        let eh = hopf.algebra().basis_vec(h);
        let expected: Vec<Scalar> = base.unit().iter().map(|u| u * &hopf.counit()[h]).collect();
        if bilinear(sigma, dh, dr, one, &eh) != expected || bilinear(sigma, dh, dr, &eh, one) != expected {
            return Err(Error::NotNormalCocycle(format!("σ(1, h{h}) or σ(h{h}, 1) differs from ε(h{h})1")));
        }
    }
    Ok(())
}

/// Solves Σ σ(h₁,g₁)τ(h₂,g₂) = ε(h)ε(g)1 for τ and checks the other side.
fn solve_convolution_inverse(hopf: &HopfAlgebra, base: &Algebra, sigma: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, Error> {
    let (dh, dr) = (hopf.dim(), base.dim());
    let field = base.field();
    let trivial = trivial_cocycle(hopf, base);
    if sigma == trivial.as_slice() {
        return Ok(trivial);
    }
    let unknowns = dh * dh * dr;
    let mut system = Matrix::zeros(field, unknowns, unknowns);
    let mut rhs = Vec::with_capacity(unknowns);
    for h in 0..dh {
        for g in 0..dh {
            let row0 = (h * dh + g) * dr;
            for (h1, h2, c1) in hopf.coproduct_of_basis(h) {
                for (g1, g2, c2) in hopf.coproduct_of_basis(g) {
                    let left = base.left_mult_matrix(&sigma[h1 * dh + g1]).scale(&(c1 * c2));
                    let col0 = (h2 * dh + g2) * dr;
                    for i in 0..dr {
                        for j in 0..dr {
                            system.entry_mut(row0 + i, col0 + j).add_assign_ref(left.get(i, j));
                        }
                    }
                }
            }
            rhs.extend(trivial[h * dh + g].iter().cloned());
        }
    }
    let sol = system
        .solve(&Matrix::column_vector(field, rhs))
        .map_err(|_| Error::NotInvertibleCocycle("convolution system has no solution".into()))?
        .column(0);
    let inv: Vec<Vec<Scalar>> = sol.chunks(dr).map(|c| c.to_vec()).collect();
    for h in 0..dh {
        for g in 0..dh {
            if convolve(hopf, base, &inv, sigma, h, g) != trivial[h * dh + g] {
                return Err(Error::NotInvertibleCocycle(format!("left inverse fails on (h{h}, h{g})")));
            }
        }
    }
    Ok(inv)
}

/// Solves Σ γ⁻¹(h₁)γ(h₂) = ε(h)1 for γ⁻¹.
fn solve_gamma_inverse(hopf: &HopfAlgebra, product: &Algebra, gamma: &Matrix) -> Result<Matrix, Error> {
    let field = product.field();
    let (dh, db) = (hopf.dim(), product.dim());
    let unknowns = dh * db;
    let mut system = Matrix::zeros(field, unknowns, unknowns);
    let mut rhs = Vec::with_capacity(unknowns);
    for h in 0..dh {
        for (h1, h2, c) in hopf.coproduct_of_basis(h) {
            let right = product.right_mult_matrix(&gamma.column(*h2)).scale(c);
            for i in 0..db {
                for j in 0..db {
                    system.entry_mut(h * db + i, h1 * db + j).add_assign_ref(right.get(i, j));
                }
            }
        }
        rhs.extend(product.unit().iter().map(|u| u * &hopf.counit()[h]));
    }
    let sol = system
        .solve(&Matrix::column_vector(field, rhs))
        .map_err(|_| Error::NotInvertibleCocycle("γ has no convolution inverse".into()))?
        .column(0);
    let cols: Vec<Vec<Scalar>> = sol.chunks(db).map(|c| c.to_vec()).collect();
    Ok(Matrix::from_columns(field, db, &cols))
}

/// Σ f(h₁) g(h₂) for linear maps H → B given as matrices, on the basis element h.
fn convolve_maps(hopf: &HopfAlgebra, product: &Algebra, f: &Matrix, g: &Matrix, h: usize) -> Vec<Scalar> {
    let mut out = product.zero();
    for (h1, h2, c) in hopf.coproduct_of_basis(h) {
        axpy(&mut out, c, &product.mul(&f.column(*h1), &g.column(*h2)));
    }
    out
}

/// Exhaustive check of every structural identity of a crossed system.
pub fn validate_crossed(sys: &CrossedSystem) -> Result<Certificate, Violation> {
    let hopf = sys.hopf();
    let base = sys.base();
    let b = sys.product();
    let dh = hopf.dim();
    let mut cert = validate_algebra(b)?;
    sys.action.check()?;
    cert = cert.merge(Certificate::new(["measuring"]));

    let trivial = trivial_cocycle(hopf, base);
    for h in 0..dh {
        for g in 0..dh {
            if convolve(hopf, base, &sys.cocycle.sigma, &sys.cocycle.sigma_inv, h, g) != trivial[h * dh + g]
                || convolve(hopf, base, &sys.cocycle.sigma_inv, &sys.cocycle.sigma, h, g) != trivial[h * dh + g]
            {
                return Err(Violation::new("cocycle-inverse", vec![h, g], format!("σ * σ⁻¹ ≠ ε⊗ε on (h{h}, h{g})")));
            }
        }
    }
    if check_normal(hopf, base, &sys.cocycle.sigma).is_err() {
        return Err(Violation::new("cocycle-normal", vec![], "σ is not normal".into()));
    }
    cert = cert.merge(Certificate::new(["cocycle-inverse", "cocycle-normal"]));

    if !sys.embed_r.is_injective() {
        return Err(Violation::new("embedding", vec![], "R → R#H is not injective".into()));
    }
    cert = cert.merge(sys.embed_r.validate()?);

    // (1#h)(1#g) = Σ σ(h₁,g₁) # h₂g₂
    let hmul = hopf.algebra();
    for h in 0..dh {
        for g in 0..dh {
            let lhs = b.mul(&sys.gamma.column(h), &sys.gamma.column(g));
            let mut rhs = b.zero();
            for (h1, h2, c1) in hopf.coproduct_of_basis(h) {
                for (g1, g2, c2) in hopf.coproduct_of_basis(g) {
                    let hg = hmul.mul(&hmul.basis_vec(*h2), &hmul.basis_vec(*g2));
                    axpy(&mut rhs, &(c1 * c2), &sys.pure_tensor(&sys.cocycle.sigma[h1 * dh + g1], &hg));
                }
            }
            if lhs != rhs {
                return Err(Violation::new("gamma-product", vec![h, g], format!("(1#h{h})(1#h{g}) ≠ Σ σ(h₁,g₁)#h₂g₂")));
            }
        }
    }
    for h in 0..dh {
        let expected: Vec<Scalar> = b.unit().iter().map(|u| u * &hopf.counit()[h]).collect();
        if convolve_maps(hopf, b, &sys.gamma_inv, &sys.gamma, h) != expected
            || convolve_maps(hopf, b, &sys.gamma, &sys.gamma_inv, h) != expected
        {
            return Err(Violation::new("gamma-convolution", vec![h], format!("γ⁻¹ * γ or γ * γ⁻¹ ≠ ε1 on h{h}")));
        }
    }
    cert = cert.merge(Certificate::new(["gamma-product", "gamma-convolution"]));

    let (left, right) = freeness_matrices(sys);
    if !left.is_invertible() {
        return Err(Violation::new("left-free", vec![], "R^{dim H} → R#H, e_i ↦ 1#h_i is not bijective".into()));
    }
    if !right.is_invertible() {
        return Err(Violation::new("right-free", vec![], "R^{dim H} → R#H, e_i ↦ 1#h_i (right) is not bijective".into()));
    }
    Ok(cert.merge(Certificate::new(["left-free", "right-free"])))
}

/// Matrices of (r_i) ↦ Σ (r_i#1)(1#h_i) and (r_i) ↦ Σ (1#h_i)(r_i#1), with the input
/// indexed by r·dim H + i.
pub fn freeness_matrices(sys: &CrossedSystem) -> (Matrix, Matrix) {
    let b = sys.product();
    let base = sys.base();
    let dh = sys.hopf().dim();
    let field = b.field();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for r in 0..base.dim() {
        let er = sys.embed_r.apply(&base.basis_vec(r));
        for h in 0..dh {
            let gh = sys.gamma.column(h);
            left.push(b.mul(&er, &gh));
            right.push(b.mul(&gh, &er));
        }
    }
    (Matrix::from_columns(field, b.dim(), &left), Matrix::from_columns(field, b.dim(), &right))
}

fn check_r_linear(sys: &CrossedSystem, m: &Module, n: &Module, f: &Matrix) -> Result<(), Error> {
    if f.shape() != (n.dim(), m.dim()) {
        return Err(Error::Malformed("map has the wrong shape".into()));
    }
    let base = sys.base();
    for &r in base.generators() {
        let x = sys.embed_r.apply(&base.basis_vec(r));
        if n.rho(&x).mul(f) != f.mul(&m.rho(&x)) {
            return Err(Error::NotRLinear);
        }
    }
    Ok(())
}

fn integral_terms(sys: &CrossedSystem) -> Result<Vec<(usize, usize, Scalar)>, Error> {
    let t = sys.hopf().normalized_right_integral().ok_or(Error::NotSemisimple)?;
    Ok(sys.hopf().coproduct_terms(&t))
}

/// f̄ = Σ ρ_N(γ⁻¹(t₁)) f ρ_M(γ(t₂)) for left product modules M, N and an R-linear f.
pub fn average_left(sys: &CrossedSystem, m: &Module, n: &Module, f: &Matrix) -> Result<Matrix, Error> {
    let terms = integral_terms(sys)?;
    check_r_linear(sys, m, n, f)?;
    let mut out = Matrix::zeros(m.field(), n.dim(), m.dim());
    for (t1, t2, c) in &terms {
        let left = n.rho(&sys.gamma_inv.column(*t1));
        let right = m.rho(&sys.gamma.column(*t2));
        out.add_scaled(c, &left.mul(f).mul(&right));
    }
    if !m.is_homomorphism(n, &out) {
        return Err(Error::InternalInconsistency("left average is not equivariant".into()));
    }
    Ok(out)
}

/// f̄(m) = Σ f(m·γ⁻¹(t₁))·γ(t₂) for right product modules, given as left modules over the
/// opposite product: f̄ = Σ ρ_N(γ(t₂)) f ρ_M(γ⁻¹(t₁)).
pub fn average_right(sys: &CrossedSystem, m: &Module, n: &Module, f: &Matrix) -> Result<Matrix, Error> {
    let terms = integral_terms(sys)?;
    check_r_linear(sys, m, n, f)?;
    let mut out = Matrix::zeros(m.field(), n.dim(), m.dim());
    for (t1, t2, c) in &terms {
        let left = n.rho(&sys.gamma.column(*t2));
        let right = m.rho(&sys.gamma_inv.column(*t1));
        out.add_scaled(c, &left.mul(f).mul(&right));
    }
    if !m.is_homomorphism(n, &out) {
        return Err(Error::InternalInconsistency("right average is not equivariant".into()));
    }
    Ok(out)
}

/// (R #_σ H) # H* with the canonical action f·(a#h) = Σ (a#h₁) f(h₂) and trivial cocycle.
/// The result carries its faithful representation on R #_σ H.
pub fn smash_with_dual(sys: &CrossedSystem) -> Result<CrossedSystem, Error> {
    let hopf = sys.hopf();
    let dual = Arc::new(hopf.dual());
    let a = sys.product().clone();
    let (dh, dr) = (hopf.dim(), sys.base().dim());
    let one = a.field().one();
    let mut entries = Vec::new();
    // e^i·(e_r # e_h) = Σ_j d[h][j][i] e_r # e_j
    for h in 0..dh {
        for (j, i, d) in hopf.coproduct_of_basis(h) {
            for r in 0..dr {
                entries.push((*i, r * dh + h, r * dh + j, d * &one));
            }
        }
    }
    let action = MeasuringAction::new(dual.clone(), a.clone(), entries)?;
    let sigma = trivial_cocycle(&dual, &a);
    let mut smash = build_crossed(action, sigma)?;
    let regular = a.left_regular();
    let rep: Vec<Matrix> = (0..a.dim())
        .flat_map(|x| {
            let l = &regular[x];
            let action = &smash.action;
            (0..dual.dim()).map(move |f| l.mul(action.matrix(f)))
        })
        .collect();
    if let Ok(with_rep) = (*smash.product).clone().with_faithful_representation(rep) {
        let product = Arc::new(with_rep);
        smash.embed_r = AlgebraMap::new(smash.embed_r.source.clone(), product.clone(), smash.embed_r.matrix.clone())?;
        smash.product_op = Arc::new(product.opposite());
        smash.product = product;
    }
    Ok(smash)
}

/// R * G for a group acting by automorphisms: `automorphisms[g]` is the matrix of e_r ↦ g·e_r.
pub fn skew_group_ring(base: Arc<Algebra>, group: &CayleyTable, automorphisms: Vec<Matrix>) -> Result<CrossedSystem, Error> {
    let field = base.field();
    let n = group.order();
    if automorphisms.len() != n {
        return Err(Error::Malformed("one matrix per group element is required".into()));
    }
    for (g, m) in automorphisms.iter().enumerate() {
        let name = &group.names[g];
        if m.shape() != (base.dim(), base.dim()) || !m.is_invertible() {
            return Err(Error::NotAutomorphism(name.clone()));
        }
        let phi = AlgebraMap::new(base.clone(), base.clone(), m.clone())?;
        if phi.validate().is_err() {
            return Err(Error::NotAutomorphism(name.clone()));
        }
    }
    if !automorphisms[group.identity()].is_identity() {
        return Err(Error::NotGroupAction("identity does not act trivially".into()));
    }
    for g in 0..n {
        for h in 0..n {
            if automorphisms[g].mul(&automorphisms[h]) != automorphisms[group.table[g][h]] {
                return Err(Error::NotGroupAction(format!("({})({}) acts differently from their product", group.names[g], group.names[h])));
            }
        }
    }
    let hopf = Arc::new(group_hopf(group, field)?);
    let mut entries = Vec::new();
    for (g, m) in automorphisms.iter().enumerate() {
        for r in 0..base.dim() {
            for s in 0..base.dim() {
                if !m.get(s, r).is_zero() {
                    entries.push((g, r, s, m.get(s, r).clone()));
                }
            }
        }
    }
    let action = MeasuringAction::new(hopf.clone(), base.clone(), entries)?;
    let sigma = trivial_cocycle(&hopf, &base);
    build_crossed(action, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{quotient_poly_algebra, split_algebra};
    use crate::hopf::{sweedler, trivial_hopf};
    use crate::linalg::{FieldSpec, Poly};

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn swap_system() -> CrossedSystem {
        let base = Arc::new(split_algebra(2, q()).unwrap());
        let swap = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]);
        skew_group_ring(base, &CayleyTable::cyclic(2), vec![Matrix::identity(q(), 2), swap]).unwrap()
    }

    #[test]
    fn trivial_action_gives_tensor_product() {
        let base = Arc::new(quotient_poly_algebra(&Poly::from_i64(q(), &[0, 0, 1])).unwrap());
        let hopf = Arc::new(group_hopf(&CayleyTable::cyclic(2), q()).unwrap());
        let action = MeasuringAction::trivial(hopf.clone(), base.clone());
        let sys = build_crossed(action, trivial_cocycle(&hopf, &base)).unwrap();
        assert_eq!(sys.product().dim(), 4);
        assert!(sys.product().is_commutative());
        assert!(validate_crossed(&sys).is_ok());
    }

    #[test]
    fn swap_gives_matrix_algebra() {
        let sys = swap_system();
        assert!(validate_crossed(&sys).is_ok());
        assert!(!sys.product().is_commutative());
        let st = crate::structure::analyze(sys.product()).unwrap();
        assert_eq!(st.radical.dim(), 0);
        assert_eq!(st.simple_count(), 1);
        assert_eq!(st.simple_dim(0), 2);
    }

    #[test]
    fn twisted_group_algebra_matches_quotient() {
        let base = Arc::new(Algebra::ground(q()));
        let hopf = Arc::new(group_hopf(&CayleyTable::cyclic(2), q()).unwrap());
        let action = MeasuringAction::trivial(hopf.clone(), base.clone());
        let mut sigma = trivial_cocycle(&hopf, &base);
        sigma[3] = vec![q().from_i64(2)];
        let sys = build_crossed(action, sigma).unwrap();
        let expected = quotient_poly_algebra(&Poly::from_i64(q(), &[-2, 0, 1])).unwrap();
        let got: Vec<_> = sys.product().structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
        let want: Vec<_> = expected.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
        assert_eq!(got, want);
        assert_eq!(sys.cocycle.sigma_inv[3], vec![q().from_ratio(1, 2).unwrap()]);
    }

    #[test]
    fn non_normal_cocycle_is_rejected() {
        let base = Arc::new(Algebra::ground(q()));
        let hopf = Arc::new(group_hopf(&CayleyTable::cyclic(2), q()).unwrap());
        let action = MeasuringAction::trivial(hopf.clone(), base.clone());
        let mut sigma = trivial_cocycle(&hopf, &base);
        sigma[1] = vec![q().from_i64(3)];
        assert!(matches!(build_crossed(action, sigma), Err(Error::NotNormalCocycle(_))));
    }

    #[test]
    fn non_invertible_cocycle_is_rejected() {
        let base = Arc::new(Algebra::ground(q()));
        let hopf = Arc::new(group_hopf(&CayleyTable::cyclic(2), q()).unwrap());
        let action = MeasuringAction::trivial(hopf.clone(), base.clone());
        let mut sigma = trivial_cocycle(&hopf, &base);
        sigma[3] = vec![q().zero()];
        assert!(matches!(build_crossed(action, sigma), Err(Error::NotInvertibleCocycle(_))));
    }

    #[test]
    fn non_measuring_action_is_rejected() {
        let base = Arc::new(split_algebra(2, q()).unwrap());
        let hopf = Arc::new(group_hopf(&CayleyTable::cyclic(2), q()).unwrap());
        // g sends u to 2u: not multiplicative
        let entries = vec![
            (0, 0, 0, q().one()),
            (0, 1, 1, q().one()),
            (1, 0, 0, q().from_i64(2)),
            (1, 1, 1, q().one()),
        ];
        assert!(matches!(MeasuringAction::new(hopf, base, entries), Err(Error::NotMeasuring(_))));
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let base = Arc::new(split_algebra(2, q()).unwrap());
        let bad = Matrix::from_i64(q(), &[&[1, 1], &[0, 1]]);
        let err = skew_group_ring(base, &CayleyTable::cyclic(2), vec![Matrix::identity(q(), 2), bad]).unwrap_err();
        assert!(matches!(err, Error::NotAutomorphism(_)));
    }

    #[test]
    fn corrupted_systems_are_reported() {
        let sys = swap_system();
        let mut bad = sys.clone();
        bad.gamma_inv = bad.gamma_inv.scale(&q().from_i64(2));
        assert_eq!(validate_crossed(&bad).unwrap_err().check, "gamma-convolution");

        let consts: Vec<_> = sys
            .product()
            .structure_constants()
            .enumerate()
            .map(|(idx, (i, j, k, c))| (i, j, k, if idx == 5 { c + &q().one() } else { c.clone() }))
            .collect();
        let edited = Algebra::new(q(), sys.product().basis_names().to_vec(), sys.product().unit().to_vec(), consts).unwrap();
        let mut bad = sys.clone();
        bad.product = Arc::new(edited);
        let v = validate_crossed(&bad).unwrap_err();
        assert!(v.check == "associativity" || v.check == "unit");
    }

    #[test]
    fn averaging_identity_and_projection() {
        let sys = swap_system();
        let reg = Module::regular(sys.product().clone());
        let id = Matrix::identity(q(), 4);
        assert_eq!(average_left(&sys, &reg, &reg, &id).unwrap(), id);
        // projection onto the R-summand R·(u#1)… spanned by basis 0 and 1 is R-linear
        let restricted = sys.restrict_to_base(&reg);
        let hom = crate::module::hom_space(&restricted, &restricted);
        for f in &hom {
            let avg = average_left(&sys, &reg, &reg, f).unwrap();
            assert!(reg.is_homomorphism(&reg, &avg));
            assert_eq!(average_left(&sys, &reg, &reg, &avg).unwrap(), avg);
        }
    }

    #[test]
    fn averaging_right_modules() {
        let sys = swap_system();
        let reg = Module::regular(sys.product_op().clone());
        let restricted = sys.restrict_to_base_op(&reg);
        for f in crate::module::hom_space(&restricted, &restricted) {
            let avg = average_right(&sys, &reg, &reg, &f).unwrap();
            assert!(reg.is_homomorphism(&reg, &avg));
        }
        let id = Matrix::identity(q(), 4);
        assert_eq!(average_right(&sys, &reg, &reg, &id).unwrap(), id);
    }

    #[test]
    fn averaging_needs_semisimple() {
        let h4 = Arc::new(sweedler(q()));
        let base = Arc::new(Algebra::ground(q()));
        let action = MeasuringAction::trivial(h4.clone(), base.clone());
        let sys = build_crossed(action, trivial_cocycle(&h4, &base)).unwrap();
        let reg = Module::regular(sys.product().clone());
        let id = Matrix::identity(q(), 4);
        assert_eq!(average_left(&sys, &reg, &reg, &id), Err(Error::NotSemisimple));
    }

    #[test]
    fn smash_with_dual_dimensions() {
        let base = Arc::new(Algebra::ground(q()));
        let hopf = Arc::new(group_hopf(&CayleyTable::cyclic(2), q()).unwrap());
        let action = MeasuringAction::trivial(hopf.clone(), base.clone());
        let sys = build_crossed(action, trivial_cocycle(&hopf, &base)).unwrap();
        let double = smash_with_dual(&sys).unwrap();
        assert_eq!(double.product().dim(), 4);
        assert!(validate_crossed(&double).is_ok());
        assert!(double.product().faithful_representation().is_some());
        let st = crate::structure::analyze(double.product()).unwrap();
        assert_eq!((st.radical.dim(), st.simple_count(), st.simple_dim(0)), (0, 1, 2));
    }

    #[test]
    fn trivial_hopf_gives_base() {
        let base = Arc::new(split_algebra(2, q()).unwrap());
        let k = Arc::new(trivial_hopf(q()));
        let action = MeasuringAction::trivial(k.clone(), base.clone());
        let sys = build_crossed(action, trivial_cocycle(&k, &base)).unwrap();
        assert_eq!(*sys.product().as_ref(), *base);
    }
}
