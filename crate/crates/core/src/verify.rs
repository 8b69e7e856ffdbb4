//! One-stop certification of a chain and its defining sequence.

use std::str::FromStr;

use rayon::prelude::*;

use crate::chain::{build_chain_with, verify_chain, Chain, ChainCheckOptions, ChainParams, Rho1Center};
use crate::error::{Error, Result};
use crate::fourway::{build_fourway, verify_fourway};
use crate::geometry::solid_distance;
use crate::linking::{canonical_filling_disk, disk_piercings, gauss_linking_number, signed_piercing_count};
use crate::report::{count_margin, CheckRecord, VerificationReport};
use crate::sequence::{expand_level, nesting_records, symmetry_record, DEFAULT_LEVEL_BUDGET};

/// A group of checks that can be switched off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Skip {
    Containment,
    Disjoint,
    Linking,
    Symmetry,
    Disks,
}

impl FromStr for Skip {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "containment" => Ok(Skip::Containment),
            "disjoint" => Ok(Skip::Disjoint),
            "linking" => Ok(Skip::Linking),
            "symmetry" => Ok(Skip::Symmetry),
            "disks" => Ok(Skip::Disks),
            other => Err(Error::InvalidParameter(format!(
                "unknown check group `{other}` (expected containment|disjoint|linking|symmetry|disks)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub skip: Vec<Skip>,
    pub nonadjacent_samples: Option<usize>,
    pub budget: u128,
    pub rho1_center: Rho1Center,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            skip: Vec::new(),
            nonadjacent_samples: None,
            budget: DEFAULT_LEVEL_BUDGET,
            rho1_center: Rho1Center::HoleCenter,
        }
    }
}

impl VerifyOptions {
    fn runs(&self, s: Skip) -> bool {
        !self.skip.contains(&s)
    }
}

/// Builds the chain for `params` and runs [`verify_all`].
pub fn run_full_verification(params: &ChainParams, depth: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let chain = build_chain_with(params, opts.rho1_center)?;
    Ok(verify_all(&chain, depth, opts))
}

/// Four-way lemma at the chain's scale, chain certification, nesting to
/// `depth`, brute-force disjointness of level 2, filling-disk piercings of
/// consecutive pairs, `ι₁` symmetry, and the derived all-level disjointness.
pub fn verify_all(chain: &Chain, depth: usize, opts: &VerifyOptions) -> VerificationReport {
    let p = &chain.params;
    let mut report = VerificationReport::new();

    match build_fourway(p.big_r, p.small_r) {
        Ok(cfg) => report.extend(verify_fourway(&cfg)),
        Err(e) => report.push(CheckRecord::new("fourway.build", false, f64::NAN).with_detail(e.to_string())),
    }

    let chain_opts = ChainCheckOptions {
        disjointness: opts.runs(Skip::Disjoint),
        containment: opts.runs(Skip::Containment),
        linking: opts.runs(Skip::Linking),
        nonadjacent_samples: opts.nonadjacent_samples,
        ..Default::default()
    };
    report.extend(verify_chain(chain, &chain_opts));

    if opts.runs(Skip::Containment) {
        for r in nesting_records(chain, depth, opts.budget) {
            report.push(r);
        }
    }
    if opts.runs(Skip::Disjoint) && depth >= 2 {
        report.push(level_disjointness_record(chain, 2, opts.budget));
    }
    if opts.runs(Skip::Disks) {
        report.push(disk_piercing_record(chain));
    }
    if opts.runs(Skip::Symmetry) {
        report.push(symmetry_record(chain));
    }
    if opts.runs(Skip::Disjoint) && opts.runs(Skip::Containment) {
        let level1 = report.get("chain.disjoint").map(|r| r.passed).unwrap_or(false);
        let nested = report.get("chain.contained").map(|r| r.passed).unwrap_or(false);
        report.push(
            CheckRecord::new("derived.all_levels_disjoint", level1 && nested, 0.0).with_detail(
                "derived: level-1 disjointness and containment imply disjointness at every level",
            ),
        );
    }
    report
}

/// Smallest resolved distance, exact evaluations, touching pairs.
type SweepRow = (f64, usize, Vec<(usize, usize)>);

/// Exhaustive pairwise disjointness of level `level` by sweep and prune on
/// the `x1` extent of the bounding boxes.
pub fn level_disjointness_record(chain: &Chain, level: usize, budget: u128) -> CheckRecord {
    let name = format!("sequence.disjoint_level{level}");
    let comps = match expand_level(chain, level, budget) {
        Ok(c) => c,
        Err(e) => return CheckRecord::new(name, false, f64::NAN).with_detail(e.to_string()),
    };
    let boxes: Vec<_> = comps.iter().map(|c| c.solid.aabb()).collect();
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by(|&a, &b| boxes[a].min.x.total_cmp(&boxes[b].min.x).then(a.cmp(&b)));

    let rows: Vec<SweepRow> = (0..order.len())
        .into_par_iter()
        .map(|oi| {
            let i = order[oi];
            let mut best = f64::INFINITY;
            let mut exact = 0;
            let mut bad = Vec::new();
            for &j in &order[oi + 1..] {
                if boxes[j].min.x > boxes[i].max.x {
                    break;
                }
                if boxes[i].gap(&boxes[j]) > 0.0 {
                    continue;
                }
                exact += 1;
                let d = solid_distance(&comps[i].solid, &comps[j].solid);
                best = best.min(d);
                if d <= 0.0 {
                    bad.push((i.min(j) + 1, i.max(j) + 1));
                }
            }
            (best, exact, bad)
        })
        .collect();
    let margin = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let exact: usize = rows.iter().map(|r| r.1).sum();
    let mut bad: Vec<_> = rows.into_iter().flat_map(|r| r.2).collect();
    bad.sort_unstable();
    CheckRecord::new(name, bad.is_empty(), margin)
        .with_detail(format!(
            "{} components, {exact} box-overlapping pairs resolved exactly",
            comps.len()
        ))
        .with_offending(bad)
}

/// For every cyclic pair `(j, j+1)`, the loop `γ_{j+1}¹` crosses the flat disk
/// spanned by `γ_j²` with signed count equal to their linking number, `±1`.
pub fn disk_piercing_record(chain: &Chain) -> CheckRecord {
    let m = chain.m();
    let rows: Vec<bool> = (1..=m)
        .into_par_iter()
        .map(|j| {
            let (_, a2) = chain.cores(j);
            let (b1, _) = chain.cores(j % m + 1);
            let Ok(disk) = canonical_filling_disk(&a2) else { return false };
            let Ok(pierce) = disk_piercings(&disk, &b1) else { return false };
            let Ok(lk) = gauss_linking_number(&a2, &b1) else { return false };
            let count = signed_piercing_count(&pierce);
            count == lk.lk && count.abs() == 1
        })
        .collect();
    let bad: Vec<_> = rows
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| (i + 1, (i + 1) % m + 1))
        .collect();
    CheckRecord::new("linking.disk_piercings", bad.is_empty(), count_margin(bad.len()))
        .with_detail(format!("{}/{m} consecutive disks pierced once, count = lk", m - bad.len()))
        .with_offending(bad)
}
