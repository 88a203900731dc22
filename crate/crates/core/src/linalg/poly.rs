//! Univariate polynomials over the ground field, with just enough factoring to find a
//! proper factor (or prove irreducibility) for the small minimal polynomials that
//! arise when splitting semisimple algebras.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FieldSpec, Scalar};

/// Coefficients from the constant term upward; never has a zero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSearch {
    /// A monic factor of degree strictly between 0 and the degree of the input.
    Found(Poly),
    Irreducible,
    /// The search budget was exhausted before a decision.
    Unknown,
}

const ROOT_SEARCH_BOUND: u64 = 1_000_000_000_000;
const KRONECKER_MAX_DEGREE: usize = 8;
const KRONECKER_MAX_COMBINATIONS: usize = 2_000_000;

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let f = c.field();
        Self::new(f, vec![c])
    }

    pub fn x(field: FieldSpec) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        Poly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - rhs.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_mul_assign(a, b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.deg();
        if self.is_zero() || self.deg() < dd {
            return (Poly::zero(self.field), self.clone());
        }
        let inv = divisor.leading().inv().expect("nonzero");
        let mut quot = vec![self.field.zero(); self.deg() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j].sub_mul_assign(&c, d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    fn mulmod(&self, rhs: &Poly, modulus: &Poly) -> Poly {
        self.mul(rhs).rem(modulus)
    }

    fn powmod(&self, exp: &BigUint, modulus: &Poly) -> Poly {
        let mut acc = Poly::constant(self.field.one()).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mulmod(&acc, modulus);
            if exp.bit(i) {
                acc = acc.mulmod(&base, modulus);
            }
        }
        acc
    }

    /// Searches for a proper monic factor of a nonconstant polynomial.
    pub fn proper_factor(&self) -> FactorSearch {
        let f = self.monic();
        let n = f.deg();
        if n <= 1 {
            return FactorSearch::Irreducible;
        }
        let g = f.gcd(&f.derivative());
        if g.deg() >= 1 && g.deg() < n {
            return FactorSearch::Found(g);
        }
        match self.field.characteristic() {
            0 => f.rational_factor(),
            p => f.modular_factor(p),
        }
    }

    fn rational_factor(&self) -> FactorSearch {
        let n = self.deg();
        let Some(ints) = self.primitive_integer_coeffs() else {
            return FactorSearch::Unknown;
        };
        match rational_root(&ints) {
            Some(Some(r)) => {
                let root = Scalar::Rational(r);
                return FactorSearch::Found(Poly::new(self.field, vec![-&root, self.field.one()]));
            }
            Some(None) => {}
            None => return FactorSearch::Unknown,
        }
        if n <= 3 {
            return FactorSearch::Irreducible;
        }
        if n > KRONECKER_MAX_DEGREE {
            return FactorSearch::Unknown;
        }
        for d in 2..=n / 2 {
            match kronecker_factor(&ints, d) {
                Some(Some(factor)) => {
                    let coeffs = factor
                        .into_iter()
                        .map(|c| Scalar::Rational(BigRational::from_integer(c)))
                        .collect();
                    return FactorSearch::Found(Poly::new(self.field, coeffs).monic());
                }
                Some(None) => {}
                None => return FactorSearch::Unknown,
            }
        }
        FactorSearch::Irreducible
    }

    /// Integer coefficients of the primitive multiple with positive leading term.
    fn primitive_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            let (_, den) = c.rational_parts()?;
            lcm = lcm.lcm(&den);
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let (num, den) = c.rational_parts().expect("rational");
                num * (&lcm / den)
            })
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() {
            for x in ints.iter_mut() {
                *x = &*x / &g;
            }
        }
        if ints.last().is_some_and(|x| x.is_negative()) {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
        Some(ints)
    }

    /// Distinct-degree then equal-degree splitting over GF(p) for a squarefree input.
    fn modular_factor(&self, p: u64) -> FactorSearch {
        let n = self.deg();
        if self.derivative().is_zero() {
            // f(x) = g(x^p) = g(x)^p over a prime field.
            let root: Vec<Scalar> = self.coeffs.iter().step_by(p as usize).cloned().collect();
            return FactorSearch::Found(Poly::new(self.field, root).monic());
        }
        let x = Poly::x(self.field);
        let pb = BigUint::from(p);
        let mut frob = x.clone();
        for d in 1..=n / 2 {
            frob = frob.powmod(&pb, self);
            let g = self.gcd(&frob.sub(&x));
            if g.deg() == 0 {
                continue;
            }
            if g.deg() < n {
                return FactorSearch::Found(g);
            }
            return match self.equal_degree_split(d, p) {
                Some(h) => FactorSearch::Found(h),
                None => FactorSearch::Unknown,
            };
        }
        FactorSearch::Irreducible
    }

    /// Cantor–Zassenhaus with a fixed seed; the input is a product of at least two
    /// distinct irreducibles of degree `d`. In characteristic 2 the power map is
    /// replaced by the trace a + a² + ··· + a^{2^{d−1}}.
    fn equal_degree_split(&self, d: usize, p: u64) -> Option<Poly> {
        let n = self.deg();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
        let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
        let one = Poly::constant(self.field.one());
        for _ in 0..64 {
            let coeffs = (0..n).map(|_| self.field.from_i64(rng.gen_range(0..p as i64))).collect();
            let a = Poly::new(self.field, coeffs);
            if a.deg() == 0 {
                continue;
            }
            let g = self.gcd(&a);
            if g.deg() > 0 && g.deg() < n {
                return Some(g);
            }
            let b = if p == 2 {
                let mut term = a.rem(self);
                let mut acc = term.clone();
                for _ in 1..d {
                    term = term.mulmod(&term, self);
                    acc = acc.add(&term);
                }
                acc
            } else {
                a.powmod(&exp, self).sub(&one)
            };
            let g = self.gcd(&b);
            if g.deg() > 0 && g.deg() < n {
                return Some(g);
            }
        }
        None
    }
}

/// Some(Some(root)) for a rational root, Some(None) when there is none, None when the
/// coefficients are too large to enumerate divisors.
fn rational_root(ints: &[BigInt]) -> Option<Option<BigRational>> {
    if ints[0].is_zero() {
        return Some(Some(BigRational::zero()));
    }
    let a0 = ints[0].abs().to_u64().filter(|&v| v <= ROOT_SEARCH_BOUND)?;
    let an = ints.last().unwrap().abs().to_u64().filter(|&v| v <= ROOT_SEARCH_BOUND)?;
    let nums = divisors(a0);
    let dens = divisors(an);
    for q in &dens {
        for p in &nums {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                if eval_int(ints, &r).is_zero() {
                    return Some(Some(r));
                }
            }
        }
    }
    Some(None)
}

fn eval_int(ints: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in ints.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Kronecker's method for a factor of degree exactly `d`. Returns Some(None) when no
/// such factor exists and None when the search would exceed the budget.
fn kronecker_factor(ints: &[BigInt], d: usize) -> Option<Option<Vec<BigInt>>> {
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut t = 0i64;
    while points.len() < d + 1 {
        let x = BigRational::from_integer(BigInt::from(t));
        let v = eval_int(ints, &x).to_integer();
        if !v.is_zero() {
            let v = v.abs().to_u64().filter(|&a| a <= ROOT_SEARCH_BOUND)?;
            points.push(t);
            values.push(v);
        }
        // 0, 1, -1, 2, -2, ...
        t = if t > 0 { -t } else { -t + 1 };
    }
    let options: Vec<Vec<i64>> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let ds = divisors(v);
            if i == 0 {
                ds.iter().map(|&x| x as i64).collect()
            } else {
                ds.iter().flat_map(|&x| [x as i64, -(x as i64)]).collect()
            }
        })
        .collect();
    let total: usize = options.iter().map(Vec::len).try_fold(1usize, |acc, l| acc.checked_mul(l))?;
    if total > KRONECKER_MAX_COMBINATIONS {
        return None;
    }
    let mut idx = vec![0usize; options.len()];
    loop {
        let ys: Vec<i64> = idx.iter().zip(&options).map(|(&i, o)| o[i]).collect();
        if let Some(g) = interpolate_integer(&points, &ys) {
            if g.len() == d + 1 && divides_exactly(&g, ints) {
                return Some(Some(g));
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Some(None);
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Lagrange interpolation; None unless every coefficient is an integer.
fn interpolate_integer(xs: &[i64], ys: &[i64]) -> Option<Vec<BigInt>> {
    let n = xs.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(BigInt::from(xs[j]));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xs[i] - xs[j]));
        }
        let scale = BigRational::from_integer(BigInt::from(ys[i])) / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

fn divides_exactly(divisor: &[BigInt], dividend: &[BigInt]) -> bool {
    let field = FieldSpec::RATIONALS;
    let to_poly = |v: &[BigInt]| {
        Poly::new(field, v.iter().map(|c| Scalar::Rational(BigRational::from_integer(c.clone()))).collect())
    };
    to_poly(dividend).rem(&to_poly(divisor)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn is_proper_factor(f: &Poly, g: &Poly) -> bool {
        let dg = g.degree().unwrap();
        dg > 0 && dg < f.degree().unwrap() && f.rem(g).is_zero()
    }

    #[test]
    fn rational_roots_split() {
        let f = Poly::from_i64(q(), &[-1, 0, 0, 1]); // x³ - 1
        let FactorSearch::Found(g) = f.proper_factor() else { panic!() };
        assert!(is_proper_factor(&f, &g));
    }

    #[test]
    fn quadratics_without_roots_are_irreducible() {
        assert_eq!(Poly::from_i64(q(), &[-2, 0, 1]).proper_factor(), FactorSearch::Irreducible);
        assert_eq!(Poly::from_i64(q(), &[1, 1, 1]).proper_factor(), FactorSearch::Irreducible);
    }

    #[test]
    fn kronecker_finds_quadratic_factors() {
        // (x² - 2)(x² + x + 1)
        let f = Poly::from_i64(q(), &[-2, 0, 1]).mul(&Poly::from_i64(q(), &[1, 1, 1]));
        let FactorSearch::Found(g) = f.proper_factor() else { panic!() };
        assert!(is_proper_factor(&f, &g));
        assert_eq!(Poly::from_i64(q(), &[1, 0, 0, 0, 1]).proper_factor(), FactorSearch::Irreducible);
    }

    #[test]
    fn repeated_factor_found_by_derivative() {
        let f = Poly::from_i64(q(), &[1, 2, 1]);
        let FactorSearch::Found(g) = f.proper_factor() else { panic!() };
        assert_eq!(g, Poly::from_i64(q(), &[1, 1]));
    }

    #[test]
    fn modular_factoring() {
        let f7 = FieldSpec::prime(7).unwrap();
        // x³ - 1 splits completely mod 7
        let f = Poly::from_i64(f7, &[-1, 0, 0, 1]);
        let FactorSearch::Found(g) = f.proper_factor() else { panic!() };
        assert!(is_proper_factor(&f, &g));
        // x² + 1 is irreducible mod 7
        assert_eq!(Poly::from_i64(f7, &[1, 0, 1]).proper_factor(), FactorSearch::Irreducible);
        // (x² + 1)(x² + x + 3) mod 7: equal-degree case
        let h = Poly::from_i64(f7, &[1, 0, 1]).mul(&Poly::from_i64(f7, &[3, 1, 1]));
        let FactorSearch::Found(g) = h.proper_factor() else { panic!() };
        assert!(is_proper_factor(&h, &g));
    }

    #[test]
    fn characteristic_two_equal_degree() {
        let f2 = FieldSpec::prime(2).unwrap();
        for h in [
            Poly::from_i64(f2, &[0, 1, 1]),
            Poly::from_i64(f2, &[1, 1, 0, 1]).mul(&Poly::from_i64(f2, &[1, 0, 1, 1])),
        ] {
            let FactorSearch::Found(g) = h.proper_factor() else { panic!() };
            assert!(is_proper_factor(&h, &g));
        }
    }
}
