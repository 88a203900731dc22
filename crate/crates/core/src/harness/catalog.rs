use std::sync::Arc;

use super::{CheckId, Status};
use crate::algebra::{matrix_algebra, quotient_poly_algebra, split_algebra, upper_triangular, Algebra, CayleyTable};
use crate::crossed::{build_crossed, skew_group_ring, trivial_cocycle, CrossedSystem, MeasuringAction};
use crate::hopf::{group_hopf, sweedler, trivial_hopf, HopfAlgebra};
use crate::linalg::{FieldSpec, Matrix, Poly};
use crate::Error;

pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub tags: Vec<String>,
    pub system: CrossedSystem,
    /// Algebra Morita equivalent to R; `M₂(R)` when absent.
    pub morita_partner: Option<Arc<Algebra>>,
    pub expected: Vec<(CheckId, Status)>,
}

impl CatalogEntry {
    pub fn is_negative_control(&self) -> bool {
        self.tags.iter().any(|t| t == "negative-control")
    }

    /// The checks run on this entry by default.
    pub fn checks(&self) -> Vec<CheckId> {
        CheckId::ALL
            .iter()
            .copied()
            .filter(|c| *c != CheckId::Contrast || self.is_negative_control())
            .collect()
    }
}

fn q() -> FieldSpec {
    FieldSpec::RATIONALS
}

fn tensor(base: Algebra, hopf: HopfAlgebra) -> Result<CrossedSystem, Error> {
    let (base, hopf) = (Arc::new(base), Arc::new(hopf));
    let action = MeasuringAction::trivial(hopf.clone(), base.clone());
    build_crossed(action, trivial_cocycle(&hopf, &base))
}

/// k_σ[C2] with σ(g, g) = c and trivial action on k.
fn twisted_c2(c: i64) -> Result<CrossedSystem, Error> {
    let base = Arc::new(Algebra::ground(q()));
    let hopf = Arc::new(group_hopf(&CayleyTable::cyclic(2), q())?);
    let action = MeasuringAction::trivial(hopf.clone(), base.clone());
    let mut sigma = trivial_cocycle(&hopf, &base);
    sigma[3] = vec![q().from_i64(c)];
    build_crossed(action, sigma)
}

fn powers(g: &Matrix, n: usize) -> Vec<Matrix> {
    let mut out = vec![Matrix::identity(g.field(), g.rows())];
    for i in 1..n {
        out.push(out[i - 1].mul(g));
    }
    out
}

fn dual_numbers(field: FieldSpec) -> Result<Algebra, Error> {
    quotient_poly_algebra(&Poly::from_i64(field, &[0, 0, 1]))
}

fn entry(
    name: &str,
    description: &str,
    tags: &[&str],
    system: CrossedSystem,
    expected: &[(CheckId, Status)],
) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        description: description.into(),
        tags: tags.iter().map(|t| t.to_string()).collect(),
        system,
        morita_partner: None,
        expected: expected.to_vec(),
    }
}

/// Every check expected to pass, for systems whose Hopf algebra is semisimple and
/// cosemisimple.
fn all_pass() -> Vec<(CheckId, Status)> {
    CheckId::ALL.iter().filter(|c| **c != CheckId::Contrast).map(|c| (*c, Status::Pass)).collect()
}

pub fn catalog() -> Result<Vec<CatalogEntry>, Error> {
    use CheckId::*;
    use Status::*;
    let c2 = CayleyTable::cyclic(2);
    let c3 = CayleyTable::cyclic(3);
    let f7 = FieldSpec::prime(7)?;
    let f2 = FieldSpec::prime(2)?;
    let mut entries = Vec::new();

    entries.push(entry(
        "tensor-ut2-c2",
        "UT₂ ⊗ ℚC2 with trivial action and cocycle",
        &["trivial", "semisimple", "cosemisimple"],
        tensor(upper_triangular(2, q())?, group_hopf(&c2, q())?)?,
        &all_pass(),
    ));

    let swap = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]);
    entries.push(entry(
        "skew-c2-split",
        "ℚ ⊕ ℚ with C2 swapping the factors; the product is M₂(ℚ)",
        &["skew", "semisimple", "cosemisimple"],
        skew_group_ring(Arc::new(split_algebra(2, q())?), &c2, powers(&swap, 2))?,
        &all_pass(),
    ));

    let sign = Matrix::from_i64(q(), &[&[1, 0], &[0, -1]]);
    entries.push(entry(
        "skew-c2-dual-numbers",
        "ℚ[x]/(x²) with C2 acting by x ↦ −x",
        &["skew", "semisimple", "cosemisimple", "infinite"],
        skew_group_ring(Arc::new(dual_numbers(q())?), &c2, powers(&sign, 2))?,
        &all_pass(),
    ));

    entries.push(entry(
        "twisted-c2-2",
        "ℚ_σ[C2] with σ(g, g) = 2, isomorphic to ℚ[x]/(x² − 2)",
        &["twisted", "semisimple", "cosemisimple"],
        twisted_c2(2)?,
        &all_pass(),
    ));

    entries.push(entry(
        "twisted-c2-1",
        "ℚ_σ[C2] with σ(g, g) = 1, the group algebra ℚC2",
        &["twisted", "semisimple", "cosemisimple"],
        twisted_c2(1)?,
        &all_pass(),
    ));

    let cycle = Matrix::from_i64(q(), &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    entries.push(entry(
        "skew-c3-split",
        "ℚ³ with C3 permuting the idempotents cyclically; the product is M₃(ℚ)",
        &["skew", "semisimple", "cosemisimple"],
        skew_group_ring(Arc::new(split_algebra(3, q())?), &c3, powers(&cycle, 3))?,
        &all_pass(),
    ));

    let scale = Matrix::from_i64(f7, &[&[1, 0], &[0, 2]]);
    entries.push(entry(
        "skew-c3-gf7-dual-numbers",
        "GF(7)[x]/(x²) with C3 acting by x ↦ 2x",
        &["skew", "modular-field", "semisimple", "cosemisimple", "infinite"],
        skew_group_ring(Arc::new(dual_numbers(f7)?), &c3, powers(&scale, 3))?,
        &all_pass(),
    ));

    entries.push(entry(
        "sweedler-negative-control",
        "ℚ # H₄ with trivial action: H₄ is neither semisimple nor cosemisimple",
        &["negative-control"],
        tensor(Algebra::ground(q()), sweedler(q()))?,
        &[
            (Construction, Pass),
            (DimensionBound, SkippedHypothesis),
            (DimensionEquality, SkippedHypothesis),
            (RegularityTransfer, SkippedHypothesis),
            (ArtinianClasses, SkippedHypothesis),
            (GroupCriterion, SkippedHypothesis),
            (Averaging, SkippedHypothesis),
            (ExtEmbed, SkippedHypothesis),
            (TorMap, Pass),
            (Morita, Pass),
            (Contrast, Pass),
        ],
    ));

    entries.push(entry(
        "ut2-trivial-hopf",
        "UT₂ with H = k",
        &["trivial", "semisimple", "cosemisimple"],
        tensor(upper_triangular(2, q())?, trivial_hopf(q()))?,
        &all_pass(),
    ));

    let dn = Arc::new(dual_numbers(q())?);
    let mut morita = entry(
        "morita-m2-dual-numbers",
        "M₂(ℚ[x]/(x²)) with H = k, paired with ℚ[x]/(x²)",
        &["trivial", "morita", "semisimple", "cosemisimple", "infinite"],
        tensor(matrix_algebra(&dn, 2)?, trivial_hopf(q()))?,
        &all_pass(),
    );
    morita.morita_partner = Some(dn);
    entries.push(morita);

    entries.push(entry(
        "gf2-c2-modular",
        "GF(2)C2 over GF(2): the characteristic divides dim H",
        &["modular-field"],
        tensor(Algebra::ground(f2), group_hopf(&c2, f2)?)?,
        &[
            (Construction, Pass),
            (DimensionBound, SkippedHypothesis),
            (DimensionEquality, SkippedHypothesis),
            (RegularityTransfer, SkippedHypothesis),
            (ArtinianClasses, SkippedHypothesis),
            (GroupCriterion, SkippedHypothesis),
            (Averaging, SkippedHypothesis),
            (ExtEmbed, SkippedHypothesis),
            (TorMap, Pass),
            (Morita, Pass),
        ],
    ));
    Ok(entries)
}

pub fn catalog_entry(name: &str) -> Result<Option<CatalogEntry>, Error> {
    Ok(catalog()?.into_iter().find(|e| e.name == name))
}
