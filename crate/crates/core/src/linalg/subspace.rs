use super::{FieldSpec, Matrix, Scalar};

/// A subspace of k^n kept as a reduced row echelon basis.
///
/// The basis vector with pivot `p` has a 1 in position `p` and zeros at every other
/// pivot, so the coordinates of a member `v` are just `v[p]` read off at the pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn whole(field: FieldSpec, ambient: usize) -> Self {
        let mut s = Self::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![field.zero(); ambient];
            v[i] = field.one();
            s.basis.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn column_span(m: &Matrix) -> Self {
        let rref = m.transpose().rref();
        let basis: Vec<Vec<Scalar>> =
            (0..rref.pivots.len()).map(|i| rref.matrix.row(i).to_vec()).collect();
        Subspace { field: m.field(), ambient: m.rows(), basis, pivots: rref.pivots }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Basis vectors as the columns of an ambient×dim matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.basis)
    }

    /// Residue of `v` after clearing every pivot position; zero iff `v` is a member.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "ambient dimension");
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                x.sub_mul_assign(&c, y);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates with respect to the echelon basis, or None if `v` is not a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
        } else {
            None
        }
    }

    /// Adds `v` to the spanning set; returns false if it was already a member.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for b in self.basis.iter_mut() {
            let c = b[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in b.iter_mut().zip(&r) {
                x.sub_mul_assign(&c, y);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Complement and projection for the quotient k^n / self.
    pub fn quotient(&self) -> Quotient {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.ambient).filter(|&j| !is_pivot[j]).collect();
        let mut complement = Matrix::zeros(self.field, self.ambient, free.len());
        let mut projection = Matrix::zeros(self.field, free.len(), self.ambient);
        for (q, &j) in free.iter().enumerate() {
            complement.set(j, q, self.field.one());
            projection.set(q, j, self.field.one());
        }
        // v ↦ residue(v) restricted to free positions; residue subtracts v[p]·b for each pivot p.
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            for (q, &j) in free.iter().enumerate() {
                if !b[j].is_zero() {
                    projection.set(q, p, -&b[j]);
                }
            }
        }
        Quotient { complement, projection, free }
    }
}

/// The quotient k^n / W: `complement` holds standard basis vectors spanning a
/// complement of W (as columns) and `projection` maps k^n onto coordinates in it.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub complement: Matrix,
    pub projection: Matrix,
    free: Vec<usize>,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Ambient positions of the complement's standard basis vectors.
    pub fn free_positions(&self) -> &[usize] {
        &self.free
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.mul_vec(v)
    }
}

/// Complement basis and projection for k^n modulo the column span of `sub`.
pub fn quotient_basis(sub: &Matrix, ambient_dim: usize) -> Quotient {
    assert_eq!(sub.rows(), ambient_dim, "subspace vectors live in k^n");
    Subspace::column_span(sub).quotient()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let quot = quotient_basis(&Matrix::zeros(q(), 3, 0), 3);
        assert!(quot.projection.is_identity());
    }

    #[test]
    fn quotient_kills_e1() {
        let quot = quotient_basis(&Matrix::from_i64(q(), &[&[1], &[0]]), 2);
        assert_eq!(quot.dim(), 1);
        assert!(quot.project(&[q().one(), q().zero()])[0].is_zero());
        assert!(quot.project(&[q().zero(), q().one()])[0].is_one());
    }

    #[test]
    fn quotient_rank_two_in_three() {
        let sub = Matrix::from_i64(q(), &[&[1, 0], &[1, 1], &[0, 1]]);
        let quot = quotient_basis(&sub, 3);
        assert_eq!(quot.dim(), 1);
        for c in sub.columns() {
            assert!(quot.project(&c).iter().all(Scalar::is_zero));
        }
        // projection restricted to the complement is the identity
        assert!(quot.projection.mul(&quot.complement).is_identity());
    }

    #[test]
    fn insert_keeps_echelon_form() {
        let mut s = Subspace::zero(q(), 3);
        assert!(s.insert(vec![q().from_i64(0), q().from_i64(2), q().from_i64(4)]));
        assert!(s.insert(vec![q().from_i64(1), q().from_i64(1), q().from_i64(1)]));
        assert!(!s.insert(vec![q().from_i64(1), q().from_i64(3), q().from_i64(5)]));
        assert_eq!(s.pivots(), &[0, 1]);
        let v = vec![q().from_i64(2), q().from_i64(3), q().from_i64(4)];
        let c = s.coordinates(&v).unwrap();
        let back: Vec<Scalar> = (0..3)
            .map(|j| &(&c[0] * &s.basis()[0][j]) + &(&c[1] * &s.basis()[1][j]))
            .collect();
        assert_eq!(back, v);
    }
}
