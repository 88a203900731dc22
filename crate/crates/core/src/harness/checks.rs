use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{CheckRecord, Context, Status};
use crate::algebra::{matrix_algebra_represented, Algebra};
use crate::crossed::{average_left, average_right, validate_crossed, CrossedSystem};
use crate::homology::{ext_restriction_map, gldim, tor_comparison_map, wdim, Dimension};
use crate::linalg::{Matrix, Subspace};
use crate::module::{hom_space, top_generators, Module};
use crate::structure;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    /// The crossed product axioms and two-sided freeness over R.
    Construction,
    /// Dimensions of the product are bounded by those of R (H semisimple).
    DimensionBound,
    /// Dimensions of the product equal those of R (H semisimple and cosemisimple).
    DimensionEquality,
    /// Semi-hereditary and von Neumann regular rings transfer to the product.
    RegularityTransfer,
    /// Semisimple artinian, semi-hereditary and regular hold for R iff for the product.
    ArtinianClasses,
    /// The characteristic criterion for commutative or cocommutative H.
    GroupCriterion,
    Averaging,
    ExtEmbed,
    TorMap,
    /// Morita equivalent algebras have equal dimensions.
    Morita,
    /// Without semisimplicity the bound can fail.
    Contrast,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::Construction,
        CheckId::DimensionBound,
        CheckId::DimensionEquality,
        CheckId::RegularityTransfer,
        CheckId::ArtinianClasses,
        CheckId::GroupCriterion,
        CheckId::Averaging,
        CheckId::ExtEmbed,
        CheckId::TorMap,
        CheckId::Morita,
        CheckId::Contrast,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::Construction => "construction",
            CheckId::DimensionBound => "dimension-bound",
            CheckId::DimensionEquality => "dimension-equality",
            CheckId::RegularityTransfer => "regularity-transfer",
            CheckId::ArtinianClasses => "artinian-classes",
            CheckId::GroupCriterion => "group-criterion",
            CheckId::Averaging => "averaging",
            CheckId::ExtEmbed => "ext-embed",
            CheckId::TorMap => "tor-map",
            CheckId::Morita => "morita",
            CheckId::Contrast => "contrast",
        }
    }

    pub fn statement(&self) -> &'static str {
        match self {
            CheckId::Construction => {
                "R #σ H is an associative unital algebra, (1#h)(1#g) = Σ σ(h₁,g₁)#h₂g₂, γ⁻¹ is a two-sided convolution inverse of γ, and R #σ H is free of rank dim H over R on both sides"
            }
            CheckId::DimensionBound => {
                "for semisimple H: left gldim(R#σH) ≤ left gldim(R), right gldim(R#σH) ≤ right gldim(R), wdim(R#σH) ≤ wdim(R)"
            }
            CheckId::DimensionEquality => {
                "for semisimple and cosemisimple H: left and right gldim and wdim of R and R#σH agree, and gldim((R#σH)#H*) = gldim(R)"
            }
            CheckId::RegularityTransfer => {
                "for semisimple H: if R is left (right) semi-hereditary so is R#σH; if R is von Neumann regular so is R#σH, which is then semiprime"
            }
            CheckId::ArtinianClasses => {
                "for semisimple and cosemisimple H: R is semisimple artinian, left (right) semi-hereditary, von Neumann regular iff R#σH is"
            }
            CheckId::GroupCriterion => {
                "for commutative or cocommutative H: char k ∤ dim H iff H is semisimple and cosemisimple, and then the dimension equalities hold"
            }
            CheckId::Averaging => {
                "for semisimple H: f ↦ Σ γ⁻¹(t₁) f γ(t₂) sends R-linear maps to R#σH-linear maps, is idempotent and linear, fixes R#σH-linear maps, and turns R-splittings of R#σH-surjections into R#σH-splittings"
            }
            CheckId::ExtEmbed => "for semisimple H: restriction Ext^n over R#σH → Ext^n over R is injective on simple pairs, n ≤ 3",
            CheckId::TorMap => {
                "ξ: P ⊗_R N → P ⊗_{R#σH} N is a chain map inducing ξ*: Tor^R_n → Tor^{R#σH}_n, n ≤ 2; an isomorphism when dim H = 1"
            }
            CheckId::Morita => "gldim (both sides) and wdim of R equal those of a Morita equivalent algebra",
            CheckId::Contrast => {
                "H not semisimple: gldim(R#σH) > gldim(R) is certified, so the semisimplicity hypothesis is needed"
            }
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CheckId::ALL.iter().map(CheckId::as_str).collect();
                format!("unknown check '{s}', expected one of {}", names.join(", "))
            })
    }
}

pub fn run_check(ctx: &Context, id: CheckId) -> CheckRecord {
    let (status, data) = match id {
        CheckId::Construction => construction(ctx),
        CheckId::DimensionBound => dimension_bound(ctx),
        CheckId::DimensionEquality => dimension_equality(ctx),
        CheckId::RegularityTransfer => regularity_transfer(ctx),
        CheckId::ArtinianClasses => artinian_classes(ctx),
        CheckId::GroupCriterion => group_criterion(ctx),
        CheckId::Averaging => averaging(ctx),
        CheckId::ExtEmbed => ext_embed(ctx),
        CheckId::TorMap => tor_map(ctx),
        CheckId::Morita => morita(ctx),
        CheckId::Contrast => contrast(ctx),
    };
    CheckRecord {
        entry: ctx.name.clone(),
        check: id,
        statement: id.statement().into(),
        status,
        field: ctx.sys.base().field(),
        data,
        expected: None,
        reproduce: None,
    }
}

type Verdict = (Status, Value);

fn skipped(reason: &str) -> Verdict {
    (Status::SkippedHypothesis, json!({ "reason": reason }))
}

fn semisimple(sys: &CrossedSystem) -> bool {
    sys.hopf().is_semisimple().0
}

fn cosemisimple(sys: &CrossedSystem) -> bool {
    sys.hopf().is_cosemisimple()
}

fn dim_json(d: &Result<Dimension, Error>) -> Value {
    match d {
        Ok(d) => json!(d),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// The certified truth value of a ≤ b, if any.
fn le(a: &Dimension, b: &Dimension) -> Option<bool> {
    use Dimension::*;
    match (a, b) {
        (AtLeast(n), Finite(m)) if n > m => Some(false),
        (AtLeast(_), Infinite(_)) => Some(true),
        (Finite(m), AtLeast(n)) if m <= n => Some(true),
        _ => a.compare(b).map(|o| o != Ordering::Greater),
    }
}

fn eq(a: &Dimension, b: &Dimension) -> Option<bool> {
    use Dimension::*;
    match (a, b) {
        (AtLeast(n), Finite(m)) | (Finite(m), AtLeast(n)) if n > m => Some(false),
        _ => a.compare(b).map(|o| o == Ordering::Equal),
    }
}

/// gldim = 0, if certified.
fn is_zero(d: &Dimension) -> Option<bool> {
    match d {
        Dimension::Finite(n) => Some(*n == 0),
        Dimension::Infinite(_) => Some(false),
        Dimension::AtLeast(n) => (*n >= 1).then_some(false),
    }
}

/// gldim ≤ 1, if certified.
fn at_most_one(d: &Dimension) -> Option<bool> {
    match d {
        Dimension::Finite(n) => Some(*n <= 1),
        Dimension::Infinite(_) => Some(false),
        Dimension::AtLeast(n) => (*n >= 2).then_some(false),
    }
}

fn implies(p: Option<bool>, q: Option<bool>) -> Option<bool> {
    match (p, q) {
        (Some(false), _) | (_, Some(true)) => Some(true),
        (Some(true), Some(false)) => Some(false),
        _ => None,
    }
}

fn iff(p: Option<bool>, q: Option<bool>) -> Option<bool> {
    Some(p? == q?)
}

fn combine(parts: &[Option<bool>]) -> Status {
    if parts.contains(&Some(false)) {
        Status::Fail
    } else if parts.iter().all(|p| *p == Some(true)) {
        Status::Pass
    } else {
        Status::Indeterminate
    }
}

/// Unwraps computed dimensions; an internal inconsistency is a failure, any other error
/// makes the verdict indeterminate.
fn need<'a>(dims: &[(&str, &'a Result<Dimension, Error>)], data: &mut Value) -> Result<Vec<&'a Dimension>, Status> {
    let mut out = Vec::new();
    let mut worst = None;
    for (name, d) in dims {
        data[*name] = dim_json(d);
        match d {
            Ok(d) => out.push(d),
            Err(Error::InternalInconsistency(_)) => worst = Some(Status::Fail),
            Err(_) => worst = worst.or(Some(Status::Indeterminate)),
        }
    }
    match worst {
        Some(s) => Err(s),
        None => Ok(out),
    }
}

fn construction(ctx: &Context) -> Verdict {
    match validate_crossed(ctx.sys) {
        Ok(cert) => (
            Status::Pass,
            json!({
                "checked": cert.checked,
                "dim_R": ctx.sys.base().dim(),
                "dim_H": ctx.sys.hopf().dim(),
                "dim_product": ctx.sys.product().dim(),
            }),
        ),
        Err(v) => (Status::Fail, json!({ "violation": v })),
    }
}

fn dimension_bound(ctx: &Context) -> Verdict {
    if !semisimple(ctx.sys) {
        return skipped("H is not semisimple");
    }
    let d = ctx.dims();
    let mut data = json!({});
    let v = match need(
        &[
            ("gldim_R", &d.gl_r),
            ("gldim_product", &d.gl_b),
            ("gldim_R_op", &d.gl_r_op),
            ("gldim_product_op", &d.gl_b_op),
            ("wdim_R", &d.w_r),
            ("wdim_product", &d.w_b),
        ],
        &mut data,
    ) {
        Ok(v) => v,
        Err(s) => return (s, data),
    };
    let parts = [le(v[1], v[0]), le(v[3], v[2]), le(v[5], v[4])];
    data["left"] = json!(parts[0]);
    data["right"] = json!(parts[1]);
    data["weak"] = json!(parts[2]);
    (combine(&parts), data)
}

/// The three equalities, shared with the group criterion.
fn equalities(ctx: &Context, data: &mut Value) -> Result<Vec<Option<bool>>, Status> {
    let d = ctx.dims();
    let v = need(
        &[
            ("gldim_R", &d.gl_r),
            ("gldim_product", &d.gl_b),
            ("gldim_R_op", &d.gl_r_op),
            ("gldim_product_op", &d.gl_b_op),
            ("wdim_R", &d.w_r),
            ("wdim_product", &d.w_b),
        ],
        data,
    )?;
    let parts = vec![eq(v[0], v[1]), eq(v[2], v[3]), eq(v[4], v[5])];
    data["left"] = json!(parts[0]);
    data["right"] = json!(parts[1]);
    data["weak"] = json!(parts[2]);
    Ok(parts)
}

fn dimension_equality(ctx: &Context) -> Verdict {
    if !semisimple(ctx.sys) {
        return skipped("H is not semisimple");
    }
    if !cosemisimple(ctx.sys) {
        return skipped("H is not cosemisimple");
    }
    let mut data = json!({});
    let mut parts = match equalities(ctx, &mut data) {
        Ok(p) => p,
        Err(s) => return (s, data),
    };
    match ctx.double() {
        Ok((double, g)) => {
            data["dim_double_smash"] = json!(double.product().dim());
            match need(&[("gldim_double_smash", g), ("gldim_R", &ctx.dims().gl_r)], &mut data) {
                Ok(v) => {
                    let chain = eq(v[0], v[1]);
                    data["double_smash"] = json!(chain);
                    parts.push(chain);
                }
                Err(s) => return (s, data),
            }
        }
        Err(e) => {
            data["double_smash_error"] = json!(e.to_string());
            return (Status::Fail, data);
        }
    }
    (combine(&parts), data)
}

fn semiprime_product(ctx: &Context) -> Option<bool> {
    structure::analyze(ctx.sys.product()).ok().map(|st| st.radical.dim() == 0)
}

fn regularity_transfer(ctx: &Context) -> Verdict {
    if !semisimple(ctx.sys) {
        return skipped("H is not semisimple");
    }
    let d = ctx.dims();
    let mut data = json!({});
    let v = match need(
        &[("gldim_R", &d.gl_r), ("gldim_product", &d.gl_b), ("gldim_R_op", &d.gl_r_op), ("gldim_product_op", &d.gl_b_op)],
        &mut data,
    ) {
        Ok(v) => v,
        Err(s) => return (s, data),
    };
    let regular_r = is_zero(v[0]);
    let mut parts = vec![
        implies(at_most_one(v[0]), at_most_one(v[1])),
        implies(at_most_one(v[2]), at_most_one(v[3])),
        implies(regular_r, is_zero(v[1])),
    ];
    if regular_r == Some(true) {
        let sp = semiprime_product(ctx);
        data["product_semiprime"] = json!(sp);
        parts.push(sp);
    }
    data["left_semi_hereditary"] = json!(parts[0]);
    data["right_semi_hereditary"] = json!(parts[1]);
    data["regular"] = json!(parts[2]);
    (combine(&parts), data)
}

fn artinian_classes(ctx: &Context) -> Verdict {
    if !semisimple(ctx.sys) {
        return skipped("H is not semisimple");
    }
    if !cosemisimple(ctx.sys) {
        return skipped("H is not cosemisimple");
    }
    let d = ctx.dims();
    let mut data = json!({});
    let v = match need(
        &[("gldim_R", &d.gl_r), ("gldim_product", &d.gl_b), ("gldim_R_op", &d.gl_r_op), ("gldim_product_op", &d.gl_b_op)],
        &mut data,
    ) {
        Ok(v) => v,
        Err(s) => return (s, data),
    };
    let parts = [
        iff(is_zero(v[0]), is_zero(v[1])),
        iff(at_most_one(v[0]), at_most_one(v[1])),
        iff(at_most_one(v[2]), at_most_one(v[3])),
        iff(is_zero(v[2]), is_zero(v[3])),
    ];
    data["semisimple_artinian"] = json!(parts[0]);
    data["left_semi_hereditary"] = json!(parts[1]);
    data["right_semi_hereditary"] = json!(parts[2]);
    data["regular"] = json!(parts[3]);
    (combine(&parts), data)
}

fn group_criterion(ctx: &Context) -> Verdict {
    let h = ctx.sys.hopf();
    let (comm, cocomm) = (h.is_commutative(), h.is_cocommutative());
    if !comm && !cocomm {
        return skipped("H is neither commutative nor cocommutative");
    }
    let p = h.field().characteristic();
    let criterion = p == 0 || !(h.dim() as u64).is_multiple_of(p);
    let integral_route = semisimple(ctx.sys) && cosemisimple(ctx.sys);
    let mut data = json!({
        "commutative": comm,
        "cocommutative": cocomm,
        "criterion": criterion,
        "semisimple_and_cosemisimple": integral_route,
    });
    if criterion != integral_route {
        return (Status::Fail, data);
    }
    if !criterion {
        data["reason"] = json!("the characteristic divides dim H");
        return (Status::SkippedHypothesis, data);
    }
    match equalities(ctx, &mut data) {
        Ok(parts) => (combine(&parts), data),
        Err(s) => (s, data),
    }
}

/// Simple modules of an algebra when its radical is available, otherwise none.
fn simples(a: &Arc<Algebra>) -> Vec<Module> {
    structure::analyze(a).map(|st| st.simple_modules(a)).unwrap_or_default()
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Matrix], rows: usize, cols: usize, field: crate::FieldSpec) -> Matrix {
    let mut f = Matrix::zeros(field, rows, cols);
    for b in basis {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            f.add_scaled(&field.from_i64(c), b);
        }
    }
    f
}

/// Equivariance, idempotence, linearity and fixed points of one averaging operator on
/// sampled maps M → N. Returns the number of maps sampled, or the failed law.
fn averaging_laws(
    average: &dyn Fn(&Module, &Module, &Matrix) -> Result<Matrix, Error>,
    restrict: &dyn Fn(&Module) -> Module,
    m: &Module,
    n: &Module,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<usize, String> {
    let field = m.field();
    let r_linear = hom_space(&restrict(m), &restrict(n));
    let mut previous: Option<(Matrix, Matrix)> = None;
    for _ in 0..samples {
        let f = random_combination(rng, &r_linear, n.dim(), m.dim(), field);
        let avg = average(m, n, &f).map_err(|e| e.to_string())?;
        if !m.is_homomorphism(n, &avg) {
            return Err("averaged map is not equivariant".into());
        }
        if average(m, n, &avg).map_err(|e| e.to_string())? != avg {
            return Err("averaging is not idempotent".into());
        }
        if let Some((g, g_avg)) = previous {
            let two = field.from_i64(2);
            let mut combo = f.clone();
            combo.add_scaled(&two, &g);
            let mut expected = avg.clone();
            expected.add_scaled(&two, &g_avg);
            if average(m, n, &combo).map_err(|e| e.to_string())? != expected {
                return Err("averaging is not linear".into());
            }
        }
        previous = Some((f, avg));
    }
    for g in hom_space(m, n) {
        if average(m, n, &g).map_err(|e| e.to_string())? != g {
            return Err("averaging moves an equivariant map".into());
        }
    }
    Ok(samples)
}

/// A free cover π: B^g → M on top generators, an R-linear splitting s (perturbed away
/// from equivariance when possible) and the check that the average of s still splits π.
fn splitting_replay(ctx: &Context, m: &Module, rng: &mut ChaCha8Rng) -> Result<Option<bool>, String> {
    let sys = ctx.sys;
    let b = sys.product();
    let field = m.field();
    let st = structure::analyze(b).ok();
    let gens = top_generators(m, st.as_deref());
    let free = Module::free(b.clone(), gens.len());
    let mut cols = Vec::new();
    for (_, v) in &gens {
        for i in 0..b.dim() {
            cols.push(m.act(&b.basis_vec(i), v));
        }
    }
    let pi = Matrix::from_columns(field, m.dim(), &cols);
    let restrict = |x: &Module| sys.restrict_to_base(x);
    let basis = hom_space(&restrict(m), &restrict(&free));
    if basis.is_empty() {
        return Ok(None);
    }
    // Σ c_j π b_j = id
    let system = Matrix::from_columns(field, m.dim() * m.dim(), &basis.iter().map(|s| pi.mul(s).vectorize()).collect::<Vec<_>>());
    let target = Matrix::identity(field, m.dim()).vectorize();
    let Ok(sol) = system.solve(&Matrix::column_vector(field, target)) else {
        return Ok(None);
    };
    let mut s = Matrix::zeros(field, free.dim(), m.dim());
    for (c, bj) in sol.column(0).iter().zip(&basis) {
        s.add_scaled(c, bj);
    }
    for k in Subspace::column_span(&system.kernel()).basis() {
        let c = field.from_i64(rng.gen_range(-2..=2));
        for (x, bj) in k.iter().zip(&basis) {
            s.add_scaled(&(&c * x), bj);
        }
    }
    let avg = average_left(sys, m, &free, &s).map_err(|e| e.to_string())?;
    Ok(Some(m.is_homomorphism(&free, &avg) && pi.mul(&avg).is_identity()))
}

fn averaging(ctx: &Context) -> Verdict {
    let sys = ctx.sys;
    if !semisimple(sys) {
        return skipped("H is not semisimple");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut left_modules = vec![Module::regular(sys.product().clone())];
    left_modules.extend(simples(sys.product()));
    let mut right_modules = vec![Module::regular(sys.product_op().clone())];
    right_modules.extend(simples(sys.product_op()));

    let left_avg = |m: &Module, n: &Module, f: &Matrix| average_left(sys, m, n, f);
    let right_avg = |m: &Module, n: &Module, f: &Matrix| average_right(sys, m, n, f);
    let left_res = |m: &Module| sys.restrict_to_base(m);
    let right_res = |m: &Module| sys.restrict_to_base_op(m);

    let mut sampled = 0;
    let mut pairs = 0;
    let sides: [(&str, &Vec<Module>, &dyn Fn(&Module, &Module, &Matrix) -> Result<Matrix, Error>, &dyn Fn(&Module) -> Module); 2] =
        [("left", &left_modules, &left_avg, &left_res), ("right", &right_modules, &right_avg, &right_res)];
    for (side, mods, avg, res) in sides {
        for (i, m) in mods.iter().enumerate() {
            for (j, n) in mods.iter().enumerate() {
                pairs += 1;
                match averaging_laws(avg, res, m, n, 4, &mut rng) {
                    Ok(k) => sampled += k,
                    Err(e) => {
                        return (Status::Fail, json!({ "side": side, "source_module": i, "target_module": j, "failure": e, "seed": ctx.seed }))
                    }
                }
            }
        }
    }
    let mut splittings = 0;
    for (i, m) in left_modules.iter().enumerate().skip(1) {
        match splitting_replay(ctx, m, &mut rng) {
            Ok(Some(true)) => splittings += 1,
            Ok(Some(false)) => {
                return (Status::Fail, json!({ "splitting_module": i, "failure": "averaged splitting does not split", "seed": ctx.seed }))
            }
            Ok(None) => {}
            Err(e) => return (Status::Fail, json!({ "splitting_module": i, "failure": e, "seed": ctx.seed })),
        }
    }
    let status = if sampled >= 20 { Status::Pass } else { Status::Indeterminate };
    (status, json!({ "seed": ctx.seed, "module_pairs": pairs, "maps_sampled": sampled, "splittings_replayed": splittings }))
}

fn ext_embed(ctx: &Context) -> Verdict {
    let sys = ctx.sys;
    if !semisimple(sys) {
        return skipped("H is not semisimple");
    }
    let mods = simples(sys.product());
    if mods.is_empty() {
        return (Status::Indeterminate, json!({ "reason": "simple modules of the product are not available" }));
    }
    let mut ranks = Vec::new();
    let mut indeterminate = false;
    for (i, m) in mods.iter().enumerate() {
        for (j, n) in mods.iter().enumerate() {
            for deg in 0..=3 {
                match ext_restriction_map(sys, m, n, deg, ctx.cap) {
                    Ok(r) if r.injective => ranks.push(json!([i, j, deg, r.dim_product, r.dim_base, r.rank])),
                    Ok(r) => {
                        return (
                            Status::Fail,
                            json!({ "pair": [i, j], "degree": deg, "dim_product": r.dim_product, "dim_base": r.dim_base, "rank": r.rank }),
                        )
                    }
                    Err(Error::InternalInconsistency(e)) => {
                        return (Status::Fail, json!({ "pair": [i, j], "degree": deg, "error": e }))
                    }
                    Err(_) => indeterminate = true,
                }
            }
        }
    }
    let status = if indeterminate { Status::Indeterminate } else { Status::Pass };
    (status, json!({ "columns": ["source", "target", "degree", "dim_product", "dim_base", "rank"], "maps": ranks }))
}

fn tor_map(ctx: &Context) -> Verdict {
    let sys = ctx.sys;
    let mut rights = simples(sys.product_op());
    let mut lefts = simples(sys.product());
    if rights.is_empty() || lefts.is_empty() {
        rights = vec![Module::regular(sys.product_op().clone())];
        lefts = vec![Module::regular(sys.product().clone())];
    }
    let trivial_h = sys.hopf().dim() == 1;
    let mut maps = Vec::new();
    let mut indeterminate = false;
    for (i, m) in rights.iter().enumerate() {
        for (j, n) in lefts.iter().enumerate() {
            for deg in 0..=2 {
                match tor_comparison_map(sys, m, n, deg, ctx.cap) {
                    Ok(t) => {
                        let iso = t.dim_base == t.dim_product && t.rank == t.dim_base;
                        if !t.chain_map || (trivial_h && !iso) {
                            return (
                                Status::Fail,
                                json!({
                                    "pair": [i, j], "degree": deg, "chain_map": t.chain_map,
                                    "dim_base": t.dim_base, "dim_product": t.dim_product, "rank": t.rank,
                                }),
                            );
                        }
                        maps.push(json!([i, j, deg, t.dim_base, t.dim_product, t.rank]));
                    }
                    Err(Error::InternalInconsistency(e)) => {
                        return (Status::Fail, json!({ "pair": [i, j], "degree": deg, "error": e }))
                    }
                    Err(_) => indeterminate = true,
                }
            }
        }
    }
    let status = if indeterminate { Status::Indeterminate } else { Status::Pass };
    (status, json!({ "columns": ["right", "left", "degree", "dim_base", "dim_product", "rank"], "maps": maps, "isomorphism_required": trivial_h }))
}

fn morita(ctx: &Context) -> Verdict {
    let base = ctx.sys.base();
    let partner = match &ctx.morita_partner {
        Some(p) => p.clone(),
        None => match matrix_algebra_represented(base, 2) {
            Ok(m) => Arc::new(m),
            Err(e) => return (Status::Indeterminate, json!({ "error": e.to_string() })),
        },
    };
    let partner_op = Arc::new(partner.opposite());
    let d = ctx.dims();
    let (gp, gp_op, wp) = (gldim(&partner, ctx.cap), gldim(&partner_op, ctx.cap), wdim(&partner, ctx.cap));
    let mut data = json!({ "dim_partner": partner.dim() });
    let v = match need(
        &[
            ("gldim_R", &d.gl_r),
            ("gldim_partner", &gp),
            ("gldim_R_op", &d.gl_r_op),
            ("gldim_partner_op", &gp_op),
            ("wdim_R", &d.w_r),
            ("wdim_partner", &wp),
        ],
        &mut data,
    ) {
        Ok(v) => v,
        Err(s) => return (s, data),
    };
    let parts = [eq(v[0], v[1]), eq(v[2], v[3]), eq(v[4], v[5])];
    (combine(&parts), data)
}

fn contrast(ctx: &Context) -> Verdict {
    let mut data = json!({ "semisimple": semisimple(ctx.sys), "cosemisimple": cosemisimple(ctx.sys) });
    if semisimple(ctx.sys) {
        data["reason"] = json!("H is semisimple; no contrast expected");
        return (Status::SkippedHypothesis, data);
    }
    let d = ctx.dims();
    let v = match need(&[("gldim_R", &d.gl_r), ("gldim_product", &d.gl_b)], &mut data) {
        Ok(v) => v,
        Err(s) => return (s, data),
    };
    let exceeds = le(v[1], v[0]).map(|x| !x);
    data["bound_violated"] = json!(exceeds);
    (combine(&[exceeds]), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::Periodicity;

    #[test]
    fn check_ids_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(c.as_str().parse::<CheckId>().unwrap(), c);
            assert_eq!(serde_json::to_value(c).unwrap(), json!(c.as_str()));
        }
        assert!("nope".parse::<CheckId>().is_err());
    }

    #[test]
    fn certified_comparisons() {
        let inf = Dimension::Infinite(Periodicity { first: 0, second: 1 });
        assert_eq!(le(&Dimension::Finite(0), &inf), Some(true));
        assert_eq!(le(&inf, &Dimension::Finite(3)), Some(false));
        assert_eq!(le(&Dimension::AtLeast(4), &Dimension::Finite(3)), Some(false));
        assert_eq!(le(&Dimension::AtLeast(2), &Dimension::Finite(3)), None);
        assert_eq!(le(&Dimension::Finite(1), &Dimension::AtLeast(1)), Some(true));
        assert_eq!(eq(&inf, &inf), Some(true));
        assert_eq!(eq(&Dimension::AtLeast(0), &Dimension::Finite(0)), None);
        assert_eq!(is_zero(&Dimension::AtLeast(0)), None);
        assert_eq!(implies(Some(false), None), Some(true));
        assert_eq!(iff(Some(true), None), None);
        assert_eq!(combine(&[Some(true), None]), Status::Indeterminate);
        assert_eq!(combine(&[Some(false), None]), Status::Fail);
    }
}
