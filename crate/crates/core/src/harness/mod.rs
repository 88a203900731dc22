//! Catalog of crossed systems, verdict-valued checks of the homological statements,
//! and the JSON report they produce.

mod catalog;
mod checks;

use std::cell::OnceCell;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::Algebra;
use crate::crossed::{smash_with_dual, CrossedSystem};
use crate::homology::{gldim, wdim, Dimension};
use crate::linalg::FieldSpec;
use crate::Error;

pub use catalog::{catalog, catalog_entry, CatalogEntry};
pub use checks::{run_check, CheckId};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
    SkippedHypothesis,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub entry: String,
    pub check: CheckId,
    /// The property being verified, in words.
    pub statement: String,
    pub status: Status,
    pub field: FieldSpec,
    pub data: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Status>,
    /// A CLI invocation reproducing this record; present on every failure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reproduce: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub skipped_hypothesis: usize,
    /// Certified verdicts that differ from the catalog expectation.
    pub unexpected: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub cap: usize,
    pub seed: u64,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(cap: usize, seed: u64, records: Vec<CheckRecord>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Indeterminate => summary.indeterminate += 1,
                Status::SkippedHypothesis => summary.skipped_hypothesis += 1,
            }
            if let Some(e) = r.expected {
                if r.status != Status::Indeterminate && r.status != e {
                    summary.unexpected += 1;
                }
            }
        }
        Report {
            tool: "xprod".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            cap,
            seed,
            records,
            summary,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }
}

/// Everything a check needs about one system, with the expensive dimensions computed
/// at most once.
pub struct Context<'a> {
    pub name: String,
    /// `catalog:<name>` or a file path, used in reproduce lines.
    pub source: String,
    pub sys: &'a CrossedSystem,
    pub cap: usize,
    pub seed: u64,
    pub morita_partner: Option<Arc<Algebra>>,
    dims: OnceCell<Dims>,
    double: OnceCell<Result<(CrossedSystem, Result<Dimension, Error>), Error>>,
}

/// Global dimensions of R, R^op, the product and its opposite, and the weak
/// dimensions of R and the product.
#[derive(Clone, Debug)]
pub struct Dims {
    pub gl_r: Result<Dimension, Error>,
    pub gl_r_op: Result<Dimension, Error>,
    pub gl_b: Result<Dimension, Error>,
    pub gl_b_op: Result<Dimension, Error>,
    pub w_r: Result<Dimension, Error>,
    pub w_b: Result<Dimension, Error>,
}

impl<'a> Context<'a> {
    pub fn new(name: &str, source: &str, sys: &'a CrossedSystem, cap: usize, seed: u64) -> Self {
        Context {
            name: name.into(),
            source: source.into(),
            sys,
            cap,
            seed,
            morita_partner: None,
            dims: OnceCell::new(),
            double: OnceCell::new(),
        }
    }

    pub fn with_partner(mut self, partner: Option<Arc<Algebra>>) -> Self {
        self.morita_partner = partner;
        self
    }

    pub fn dims(&self) -> &Dims {
        self.dims.get_or_init(|| {
            let s = self.sys;
            Dims {
                gl_r: gldim(s.base(), self.cap),
                gl_r_op: gldim(s.base_op(), self.cap),
                gl_b: gldim(s.product(), self.cap),
                gl_b_op: gldim(s.product_op(), self.cap),
                w_r: wdim(s.base(), self.cap),
                w_b: wdim(s.product(), self.cap),
            }
        })
    }

    /// (R #σ H) # H* with its left global dimension.
    pub fn double(&self) -> &Result<(CrossedSystem, Result<Dimension, Error>), Error> {
        self.double.get_or_init(|| {
            let d = smash_with_dual(self.sys)?;
            let g = gldim(d.product(), self.cap);
            Ok((d, g))
        })
    }

    fn reproduce(&self, check: CheckId) -> String {
        format!("xprod verify --check {} --system {} --cap {}", check.as_str(), self.source, self.cap)
    }
}

/// Runs the requested checks (all of them when `checks` is empty) on one context.
pub fn run_checks(ctx: &Context, checks: &[CheckId], expected: &[(CheckId, Status)]) -> Vec<CheckRecord> {
    let ids: Vec<CheckId> = if checks.is_empty() { CheckId::ALL.to_vec() } else { checks.to_vec() };
    ids.into_iter()
        .map(|id| {
            let mut rec = run_check(ctx, id);
            rec.expected = expected.iter().find(|(c, _)| *c == id).map(|(_, s)| *s);
            if rec.status == Status::Fail {
                rec.reproduce = Some(ctx.reproduce(id));
            }
            rec
        })
        .collect()
}

/// Runs every check on every catalog entry whose name or tags match `filter`.
pub fn run_catalog(filter: Option<&str>, cap: usize, seed: u64) -> Result<Report, Error> {
    let mut records = Vec::new();
    for entry in catalog()? {
        if let Some(f) = filter {
            if entry.name != f && !entry.tags.iter().any(|t| t == f) {
                continue;
            }
        }
        records.extend(run_entry(&entry, &[], cap, seed));
    }
    Ok(Report::new(cap, seed, records))
}

pub fn run_entry(entry: &CatalogEntry, checks: &[CheckId], cap: usize, seed: u64) -> Vec<CheckRecord> {
    let source = format!("catalog:{}", entry.name);
    let ctx = Context::new(&entry.name, &source, &entry.system, cap, seed).with_partner(entry.morita_partner.clone());
    let ids: Vec<CheckId> = if checks.is_empty() { entry.checks() } else { checks.to_vec() };
    run_checks(&ctx, &ids, &entry.expected)
}
