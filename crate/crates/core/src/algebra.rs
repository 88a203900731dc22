//! Finite-dimensional associative unital algebras presented by structure constants.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::linalg::{is_zero_vec, unit_vec, zero_vec, FieldSpec, Matrix, Poly, Scalar, Subspace};
use crate::structure::Structure;
use crate::{Certificate, Error, Violation};

/// e_i·e_j = Σ_k c[i][j][k] e_k, stored sparsely per ordered pair (i, j).
#[derive(Clone)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    basis_names: Vec<String>,
    unit: Vec<Scalar>,
    mult: Vec<Vec<(usize, Scalar)>>,
    /// A known faithful representation; lets the trace-form radical run in
    /// characteristic p whenever p exceeds its dimension.
    faithful: Option<Arc<Vec<Matrix>>>,
    generators: OnceLock<Vec<usize>>,
    structure: OnceLock<Result<Arc<Structure>, Error>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.unit == other.unit
            && self.mult == other.mult
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field)
            .field("dim", &self.dim)
            .field("basis", &self.basis_names)
            .finish_non_exhaustive()
    }
}

impl Algebra {
    /// Builds an algebra from structure-constant quadruples (i, j, k, c); repeated
    /// quadruples for the same (i, j, k) are summed.
    pub fn new(
        field: FieldSpec,
        basis_names: Vec<String>,
        unit: Vec<Scalar>,
        constants: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self, Error> {
        let dim = basis_names.len();
        if dim == 0 {
            return Err(Error::Malformed("algebra of dimension 0".into()));
        }
        if unit.len() != dim {
            return Err(Error::Malformed(format!("unit has length {} but dim is {dim}", unit.len())));
        }
        let mut dense: Vec<Vec<Scalar>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Malformed(format!("structure constant index ({i},{j},{k}) out of range")));
            }
            let slot = &mut dense[i * dim + j];
            if slot.is_empty() {
                *slot = zero_vec(field, dim);
            }
            slot[k].add_assign_ref(&c);
        }
        let mult = dense
            .into_iter()
            .map(|v| {
                v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()
            })
            .collect();
        Ok(Algebra {
            field,
            dim,
            basis_names,
            unit,
            mult,
            faithful: None,
            generators: OnceLock::new(),
            structure: OnceLock::new(),
        })
    }

    /// The one-dimensional algebra k.
    pub fn ground(field: FieldSpec) -> Self {
        Self::new(field, vec!["1".into()], vec![field.one()], [(0, 0, 0, field.one())])
            .expect("ground field")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.field, self.dim, i)
    }

    pub fn zero(&self) -> Vec<Scalar> {
        zero_vec(self.field, self.dim)
    }

    /// Sparse expansion of e_i·e_j.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.mult[i * self.dim + j]
    }

    /// All nonzero structure constants as (i, j, k, c).
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        (0..self.dim * self.dim).flat_map(move |ij| {
            let (i, j) = (ij / self.dim, ij % self.dim);
            self.mult[ij].iter().map(move |(k, c)| (i, j, *k, c))
        })
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    out[*k].add_mul_assign(&ab, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Scalar], n: usize) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Matrix of y ↦ x·y.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<_> = (0..self.dim).map(|j| self.mul(x, &self.basis_vec(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of y ↦ y·x.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<_> = (0..self.dim).map(|j| self.mul(&self.basis_vec(j), x)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// L_{e_i} for every basis element: the left regular representation.
    pub fn left_regular(&self) -> Vec<Matrix> {
        (0..self.dim)
            .map(|i| {
                let mut m = Matrix::zeros(self.field, self.dim, self.dim);
                for j in 0..self.dim {
                    for (k, c) in self.basis_product(i, j) {
                        m.set(*k, j, c.clone());
                    }
                }
                m
            })
            .collect()
    }

    /// Evaluates a polynomial at `x`, with x⁰ = `identity` (which may be a corner idempotent).
    pub fn eval_poly(&self, p: &Poly, x: &[Scalar], identity: &[Scalar]) -> Vec<Scalar> {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            crate::linalg::axpy(&mut acc, c, identity);
        }
        acc
    }

    /// Minimal polynomial of `x` inside the corner algebra with identity `identity`.
    pub fn min_poly(&self, x: &[Scalar], identity: &[Scalar]) -> Poly {
        let mut powers: Vec<Vec<Scalar>> = vec![identity.to_vec()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let m = Matrix::from_columns(self.field, self.dim, &powers);
            if let Ok(sol) = m.solve(&Matrix::column_vector(self.field, next.clone())) {
                let mut coeffs: Vec<Scalar> = sol.column(0).iter().map(|c| -c).collect();
                coeffs.push(self.field.one());
                return Poly::new(self.field, coeffs);
            }
            powers.push(next);
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Basis indices that generate the algebra, chosen greedily in basis order.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens: Vec<usize> = Vec::new();
            let mut span = self.closure(&gens);
            for i in 0..self.dim {
                if span.dim() == self.dim {
                    break;
                }
                if !span.contains(&self.basis_vec(i)) {
                    gens.push(i);
                    span = self.closure(&gens);
                }
            }
            gens
        })
    }

    /// Smallest subspace containing 1 and stable under left multiplication by the given
    /// basis elements, i.e. the subalgebra they generate.
    fn closure(&self, gens: &[usize]) -> Subspace {
        let mut span = Subspace::zero(self.field, self.dim);
        let mut queue = vec![self.unit.clone()];
        span.insert(self.unit.clone());
        while let Some(v) = queue.pop() {
            for &g in gens {
                let w = self.mul(&self.basis_vec(g), &v);
                if span.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        span
    }

    pub(crate) fn structure_cell(&self) -> &OnceLock<Result<Arc<Structure>, Error>> {
        &self.structure
    }

    pub fn faithful_representation(&self) -> Option<&[Matrix]> {
        self.faithful.as_deref().map(Vec::as_slice)
    }

    /// Attaches a faithful representation after checking that it is one.
    pub fn with_faithful_representation(mut self, rep: Vec<Matrix>) -> Result<Self, Error> {
        if rep.len() != self.dim {
            return Err(Error::Malformed("representation needs one matrix per basis element".into()));
        }
        let n = rep[0].rows();
        if rep.iter().any(|m| m.shape() != (n, n)) {
            return Err(Error::Malformed("representation matrices must be square and equal size".into()));
        }
        check_representation(self.field, &self, &rep, n)?;
        let stacked: Vec<Vec<Scalar>> = rep.iter().map(Matrix::vectorize).collect();
        if Subspace::span(self.field, n * n, stacked).dim() != self.dim {
            return Err(Error::Malformed("representation is not faithful".into()));
        }
        self.faithful = Some(Arc::new(rep));
        self.structure = OnceLock::new();
        Ok(self)
    }

    pub fn opposite(&self) -> Algebra {
        let consts: Vec<_> = self.structure_constants().map(|(i, j, k, c)| (j, i, k, c.clone())).collect();
        let mut op = Algebra::new(self.field, self.basis_names.clone(), self.unit.clone(), consts)
            .expect("opposite of a valid presentation");
        op.faithful = self
            .faithful
            .as_ref()
            .map(|rep| Arc::new(rep.iter().map(Matrix::transpose).collect()));
        op
    }

    /// Quotient by a two-sided ideal, with the complement basis of standard vectors.
    /// Returns the quotient algebra and the projection matrix A → A/I.
    pub fn quotient(&self, ideal: &Subspace) -> (Algebra, Matrix) {
        let quot = ideal.quotient();
        let free = quot.free_positions().to_vec();
        let names = free.iter().map(|&i| format!("[{}]", self.basis_names[i])).collect();
        let mut consts = Vec::new();
        for (a, &i) in free.iter().enumerate() {
            for (b, &j) in free.iter().enumerate() {
                let mut prod = self.zero();
                for (k, c) in self.basis_product(i, j) {
                    prod[*k] = c.clone();
                }
                for (c, x) in quot.project(&prod).into_iter().enumerate() {
                    if !x.is_zero() {
                        consts.push((a, b, c, x));
                    }
                }
            }
        }
        let unit = quot.project(&self.unit);
        let alg = Algebra::new(self.field, names, unit, consts).expect("quotient presentation");
        (alg, quot.projection)
    }
}

fn check_representation(field: FieldSpec, alg: &Algebra, rep: &[Matrix], n: usize) -> Result<(), Error> {
    let mut unit = Matrix::zeros(field, n, n);
    for (i, c) in alg.unit().iter().enumerate() {
        unit.add_scaled(c, &rep[i]);
    }
    if !unit.is_identity() {
        return Err(Error::Malformed("representation does not send 1 to the identity".into()));
    }
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let lhs = rep[i].mul(&rep[j]);
            let mut rhs = Matrix::zeros(field, n, n);
            for (k, c) in alg.basis_product(i, j) {
                rhs.add_scaled(c, &rep[*k]);
            }
            if lhs != rhs {
                return Err(Error::Malformed(format!("representation fails on basis pair ({i},{j})")));
            }
        }
    }
    Ok(())
}

/// Exhaustive associativity and unit check on basis triples and pairs.
pub fn validate_algebra(a: &Algebra) -> Result<Certificate, Violation> {
    let n = a.dim();
    for i in 0..n {
        let ei = a.basis_vec(i);
        if a.mul(a.unit(), &ei) != ei || a.mul(&ei, a.unit()) != ei {
            return Err(Violation::new("unit", vec![i], format!("1·e{i} or e{i}·1 differs from e{i}")));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let mut ij = a.zero();
            for (k, c) in a.basis_product(i, j) {
                ij[*k] = c.clone();
            }
            for k in 0..n {
                let ek = a.basis_vec(k);
                let lhs = a.mul(&ij, &ek);
                let mut jk = a.zero();
                for (l, c) in a.basis_product(j, k) {
                    jk[*l] = c.clone();
                }
                let rhs = a.mul(&a.basis_vec(i), &jk);
                if lhs != rhs {
                    return Err(Violation::new(
                        "associativity",
                        vec![i, j, k],
                        format!(
                            "({}·{})·{} != {}·({}·{})",
                            a.basis_names[i], a.basis_names[j], a.basis_names[k],
                            a.basis_names[i], a.basis_names[j], a.basis_names[k]
                        ),
                    ));
                }
            }
        }
    }
    Ok(Certificate::new(["unit", "associativity"]))
}

/// A finite group given by its multiplication table; `table[a][b]` is the index of a·b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl CayleyTable {
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| if i == 0 { "e".to_string() } else if i == 1 { "g".to_string() } else { format!("g{i}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        CayleyTable { names, table }
    }

    /// S3 as permutations of {0,1,2}, listed in lexicographic order.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        let names = perms.iter().map(|p| format!("({}{}{})", p[0], p[1], p[2])).collect();
        CayleyTable { names, table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Index of the identity after checking the group axioms.
    pub fn check(&self) -> Result<usize, Error> {
        let n = self.table.len();
        let bad = |msg: String| Err(Error::NotAGroup(msg));
        if n == 0 || self.names.len() != n {
            return bad("empty table or name count mismatch".into());
        }
        if self.table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table is not closed".into());
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return bad(format!("associativity fails on ({a},{b},{c})"));
                    }
                }
            }
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|a| self.table[e][a] == a && self.table[a][e] == a)) else {
            return bad("no identity element".into());
        };
        for a in 0..n {
            if !(0..n).any(|b| self.table[a][b] == e && self.table[b][a] == e) {
                return bad(format!("element {a} has no inverse"));
            }
        }
        Ok(e)
    }

    pub fn identity(&self) -> usize {
        self.check().expect("validated group")
    }

    pub fn inverse(&self, a: usize) -> usize {
        let e = self.identity();
        (0..self.order()).find(|&b| self.table[a][b] == e).expect("validated group")
    }
}

/// The group algebra kG.
pub fn group_algebra(group: &CayleyTable, field: FieldSpec) -> Result<Algebra, Error> {
    let e = group.check()?;
    let n = group.order();
    let consts = (0..n).flat_map(|a| (0..n).map(move |b| (a, b, group.table[a][b], field.one())));
    Algebra::new(field, group.names.clone(), unit_vec(field, n, e), consts)
}

/// k[x]/(p) for a monic p of degree ≥ 1, with basis 1, x, …, x^{deg−1}.
pub fn quotient_poly_algebra(p: &Poly) -> Result<Algebra, Error> {
    let field = p.field();
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::Malformed("polynomial must have degree at least 1".into())),
    };
    if !p.leading().is_one() {
        return Err(Error::Malformed("polynomial must be monic".into()));
    }
    // x^m reduced mod p, for m < 2·deg − 1.
    let reduce = |m: usize| -> Vec<Scalar> {
        let mut coeffs = zero_vec(field, m + 1);
        coeffs[m] = field.one();
        let r = Poly::new(field, coeffs).rem(p);
        let mut v = zero_vec(field, deg);
        for (i, c) in r.coeffs().iter().enumerate() {
            v[i] = c.clone();
        }
        v
    };
    let mut consts = Vec::new();
    for i in 0..deg {
        for j in 0..deg {
            for (k, c) in reduce(i + j).into_iter().enumerate() {
                if !c.is_zero() {
                    consts.push((i, j, k, c));
                }
            }
        }
    }
    let names = (0..deg)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    Algebra::new(field, names, unit_vec(field, deg, 0), consts)
}

/// n×n matrices over A; basis E_{ab}⊗e_i at index (a·n + b)·dim A + i.
pub fn matrix_algebra(a: &Algebra, n: usize) -> Result<Algebra, Error> {
    if n == 0 {
        return Err(Error::Malformed("matrix size must be at least 1".into()));
    }
    if n == 1 {
        return Ok(a.clone());
    }
    let d = a.dim();
    let field = a.field();
    let idx = |r: usize, c: usize, i: usize| (r * n + c) * d + i;
    let mut consts = Vec::new();
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                for (i, j, k, c) in a.structure_constants() {
                    consts.push((idx(r, s, i), idx(s, t, j), idx(r, t, k), c.clone()));
                }
            }
        }
    }
    let mut unit = zero_vec(field, n * n * d);
    for r in 0..n {
        for (i, c) in a.unit().iter().enumerate() {
            unit[idx(r, r, i)] = c.clone();
        }
    }
    let mut names = Vec::with_capacity(n * n * d);
    for r in 0..n {
        for s in 0..n {
            for name in a.basis_names() {
                names.push(format!("E{}{}⊗{}", r + 1, s + 1, name));
            }
        }
    }
    Algebra::new(field, names, unit, consts)
}

/// `matrix_algebra(a, n)` acting on V^n by blocks, where V carries the faithful
/// representation of `a` (or its left regular one). Useful in small characteristic,
/// where the trace form of the regular representation degenerates.
pub fn matrix_algebra_represented(a: &Algebra, n: usize) -> Result<Algebra, Error> {
    let m = matrix_algebra(a, n)?;
    if n == 1 {
        return Ok(m);
    }
    let base_rep = match a.faithful_representation() {
        Some(rep) => rep.to_vec(),
        None => a.left_regular(),
    };
    let v = base_rep[0].rows();
    let d = a.dim();
    let field = a.field();
    let rep = (0..m.dim())
        .map(|idx| {
            let (rs, i) = (idx / d, idx % d);
            let (r, s) = (rs / n, rs % n);
            let mut out = Matrix::zeros(field, n * v, n * v);
            for x in 0..v {
                for y in 0..v {
                    out.set(r * v + x, s * v + y, base_rep[i].get(x, y).clone());
                }
            }
            out
        })
        .collect();
    m.with_faithful_representation(rep)
}

/// Upper triangular n×n matrices over k, basis E_{ab} with a ≤ b in row-major order.
pub fn upper_triangular(n: usize, field: FieldSpec) -> Result<Algebra, Error> {
    if n == 0 {
        return Err(Error::Malformed("matrix size must be at least 1".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).unwrap();
    let mut consts = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate() {
            if b == c {
                consts.push((i, j, index(a, d), field.one()));
            }
        }
    }
    let mut unit = zero_vec(field, pairs.len());
    for a in 0..n {
        unit[index(a, a)] = field.one();
    }
    let names = pairs.iter().map(|(a, b)| format!("E{}{}", a + 1, b + 1)).collect();
    Algebra::new(field, names, unit, consts)
}

/// A × B with the basis of A followed by the basis of B.
pub fn direct_product(a: &Algebra, b: &Algebra) -> Result<Algebra, Error> {
    if a.field() != b.field() {
        return Err(Error::Malformed("factors over different fields".into()));
    }
    let da = a.dim();
    let mut consts: Vec<_> = a.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
    consts.extend(b.structure_constants().map(|(i, j, k, c)| (da + i, da + j, da + k, c.clone())));
    let mut unit = a.unit().to_vec();
    unit.extend_from_slice(b.unit());
    let mut names = a.basis_names().to_vec();
    names.extend(b.basis_names().iter().cloned());
    Algebra::new(a.field(), names, unit, consts)
}

/// k × k × … × k (n copies), basis of orthogonal idempotents u1, …, un.
pub fn split_algebra(n: usize, field: FieldSpec) -> Result<Algebra, Error> {
    let names = (0..n).map(|i| format!("u{}", i + 1)).collect();
    let consts = (0..n).map(|i| (i, i, i, field.one()));
    Algebra::new(field, names, vec![field.one(); n], consts)
}

/// A linear map between algebras that is meant to be multiplicative and unital.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    /// dim(target) × dim(source)
    pub matrix: Matrix,
}

impl AlgebraMap {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<Self, Error> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::Malformed("algebra map matrix has the wrong shape".into()));
        }
        Ok(AlgebraMap { source, target, matrix })
    }

    pub fn identity(a: Arc<Algebra>) -> Self {
        let m = Matrix::identity(a.field(), a.dim());
        AlgebraMap { source: a.clone(), target: a, matrix: m }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    /// self ∘ first
    pub fn compose(&self, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        }
    }

    /// The same linear map viewed between opposite algebras.
    pub fn opposite(&self) -> AlgebraMap {
        AlgebraMap {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            matrix: self.matrix.clone(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn validate(&self) -> Result<Certificate, Violation> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.unit()) != t.unit() {
            return Err(Violation::new("unital", vec![], "1 is not mapped to 1".into()));
        }
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = self.apply(&s.mul(&s.basis_vec(i), &s.basis_vec(j)));
                let rhs = t.mul(&self.apply(&s.basis_vec(i)), &self.apply(&s.basis_vec(j)));
                if lhs != rhs {
                    return Err(Violation::new("multiplicative", vec![i, j], format!("φ(e{i}e{j}) != φ(e{i})φ(e{j})")));
                }
            }
        }
        Ok(Certificate::new(["unital", "multiplicative"]))
    }
}

/// True when x is a nonzero multiple of 1 in `a`.
pub fn is_scalar(a: &Algebra, x: &[Scalar]) -> bool {
    let u = a.unit();
    let Some(p) = u.iter().position(|c| !c.is_zero()) else { return false };
    let s = &x[p] * &u[p].inv().unwrap();
    let mut diff = x.to_vec();
    crate::linalg::axpy(&mut diff, &-&s, u);
    is_zero_vec(&diff)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn group_algebras_validate() {
        let c2 = group_algebra(&CayleyTable::cyclic(2), q()).unwrap();
        assert!(validate_algebra(&c2).is_ok());
        let g = c2.basis_vec(1);
        assert_eq!(c2.mul(&g, &g), c2.unit());
        let c3 = group_algebra(&CayleyTable::cyclic(3), FieldSpec::prime(7).unwrap()).unwrap();
        assert_eq!(c3.dim(), 3);
        let s3 = group_algebra(&CayleyTable::symmetric3(), q()).unwrap();
        assert!(validate_algebra(&s3).is_ok());
        assert_eq!(s3.dim(), 6);
        assert!(!s3.is_commutative());
    }

    #[test]
    fn not_a_group_is_rejected() {
        let t = CayleyTable { names: vec!["a".into(), "b".into()], table: vec![vec![0, 0], vec![0, 1]] };
        assert!(matches!(group_algebra(&t, q()), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn missing_unit_is_reported() {
        let a = Algebra::new(q(), vec!["e1".into(), "e2".into()], vec![q().zero(), q().zero()], [(0, 0, 1, q().one())])
            .unwrap();
        assert_eq!(validate_algebra(&a).unwrap_err().check, "unit");
    }

    #[test]
    fn matrix_algebra_over_gf5_validates() {
        let f5 = FieldSpec::prime(5).unwrap();
        let m2 = matrix_algebra(&Algebra::ground(f5), 2).unwrap();
        assert_eq!(m2.dim(), 4);
        assert!(validate_algebra(&m2).is_ok());
        assert!(validate_algebra(&m2.opposite()).is_ok());
    }

    #[test]
    fn matrix_algebra_dimension_and_identity_case() {
        let dual = quotient_poly_algebra(&Poly::from_i64(q(), &[0, 0, 1])).unwrap();
        assert_eq!(matrix_algebra(&dual, 1).unwrap(), dual);
        let m = matrix_algebra(&dual, 2).unwrap();
        assert_eq!(m.dim(), 8);
        assert!(validate_algebra(&m).is_ok());
    }

    #[test]
    fn quotient_poly_reduces() {
        let a = quotient_poly_algebra(&Poly::from_i64(q(), &[-2, 0, 1])).unwrap();
        let x = a.basis_vec(1);
        assert_eq!(a.mul(&x, &x), vec![q().from_i64(2), q().zero()]);
        // (1 ± x)/2 are orthogonal idempotents in k[x]/(x²−1)
        let b = quotient_poly_algebra(&Poly::from_i64(q(), &[-1, 0, 1])).unwrap();
        let half = q().from_ratio(1, 2).unwrap();
        let e = vec![half.clone(), half.clone()];
        let f = vec![half.clone(), -&half];
        assert_eq!(b.mul(&e, &e), e);
        assert_eq!(b.mul(&f, &f), f);
        assert!(is_zero_vec(&b.mul(&e, &f)));
    }

    #[test]
    fn upper_triangular_dims() {
        assert_eq!(upper_triangular(1, q()).unwrap(), Algebra::ground(q()));
        let ut3 = upper_triangular(3, FieldSpec::prime(11).unwrap()).unwrap();
        assert_eq!(ut3.dim(), 6);
        assert!(validate_algebra(&ut3).is_ok());
    }

    #[test]
    fn opposite_is_an_involution() {
        let ut2 = upper_triangular(2, q()).unwrap();
        assert_ne!(ut2.opposite(), ut2);
        assert_eq!(ut2.opposite().opposite(), ut2);
        let c2 = group_algebra(&CayleyTable::cyclic(2), q()).unwrap();
        assert_eq!(c2.opposite(), c2);
    }

    #[test]
    fn generators_generate() {
        let m = matrix_algebra(&Algebra::ground(q()), 3).unwrap();
        let gens = m.generators();
        assert!(gens.len() < m.dim());
        assert_eq!(m.closure(gens).dim(), m.dim());
    }

    #[test]
    fn min_poly_of_group_element() {
        let c3 = group_algebra(&CayleyTable::cyclic(3), q()).unwrap();
        let p = c3.min_poly(&c3.basis_vec(1), c3.unit());
        assert_eq!(p, Poly::from_i64(q(), &[-1, 0, 0, 1]));
    }

    #[test]
    fn faithful_representation_is_checked() {
        let ut2 = upper_triangular(2, q()).unwrap();
        let reg = ut2.left_regular();
        assert!(ut2.clone().with_faithful_representation(reg).is_ok());
        let zero = vec![Matrix::zeros(q(), 2, 2); 3];
        assert!(ut2.with_faithful_representation(zero).is_err());
    }
}
