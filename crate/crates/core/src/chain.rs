//! The level-one chain: `m = 8n` scaled copies of `X₀` strung along its
//! figure-eight core, consecutive copies Hopf-linked, four of them meeting in
//! a four-way link at the origin.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use nalgebra::Matrix3;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourway::max_thickness;
use crate::geometry::{
    containment_margin, make_canonical_double_torus, solid_distance, Aabb, DoubleTorus, PolyLoop,
    Similarity, Transform, Vec3,
};
use crate::linking::{gauss_linking_number, is_hopf_pair, GAUSS_RESIDUAL_TOL};
use crate::report::{count_margin, CheckRecord, VerificationReport};

/// Relative tolerance of the anchor identity `m·3√2·k = 16`.
pub const K_CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainParams {
    pub big_r: f64,
    pub small_r: f64,
    pub k: f64,
    pub m: usize,
    pub n: usize,
}

/// `k = 16 / (3√2·m)`, the scale at which `n = m/8` anchor gaps exactly
/// cover one side of the core.
pub fn solve_k_for_m(m: usize) -> Result<f64> {
    if m == 0 || !m.is_multiple_of(16) {
        return Err(Error::InvalidParameter(format!(
            "m must be a positive multiple of 16, got {m}"
        )));
    }
    Ok(16.0 / (3.0 * SQRT_2 * m as f64))
}

/// The crude containment bound `2√2·k·(2R + r) < r`.
pub fn kbound_satisfied(big_r: f64, small_r: f64, k: f64) -> bool {
    2.0 * SQRT_2 * k * (2.0 * big_r + small_r) < small_r
}

/// Smallest multiple of 16 whose scale satisfies [`kbound_satisfied`].
pub fn minimal_m_for_kbound(big_r: f64, small_r: f64) -> Result<usize> {
    if !(big_r > 0.0 && small_r > 0.0 && small_r < big_r) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < r < R, got R={big_r}, r={small_r}"
        )));
    }
    let mut m = 16;
    while !kbound_satisfied(big_r, small_r, solve_k_for_m(m)?) {
        m += 16;
    }
    Ok(m)
}

impl ChainParams {
    /// Validated parameters; `k` defaults to [`solve_k_for_m`].
    pub fn new(big_r: f64, small_r: f64, m: usize, k: Option<f64>) -> Result<Self> {
        let p = Self::new_relaxed(big_r, small_r, m, k)?;
        p.validate()?;
        Ok(p)
    }

    /// Like [`ChainParams::new`] but without the four-way thickness bound, so
    /// that too-thick configurations can still be built and verified (and
    /// fail verification).
    pub fn new_relaxed(big_r: f64, small_r: f64, m: usize, k: Option<f64>) -> Result<Self> {
        let k = match k {
            Some(k) => k,
            None => solve_k_for_m(m)?,
        };
        let p = ChainParams {
            big_r,
            small_r,
            k,
            m,
            n: m / 8,
        };
        p.validate_structure()?;
        Ok(p)
    }

    /// All invariants, including `r` below the four-way thickness bound.
    pub fn validate(&self) -> Result<()> {
        self.validate_structure()?;
        let bound = max_thickness(self.big_r);
        if self.small_r >= bound {
            return Err(Error::InvalidParameter(format!(
                "r = {} violates the four-way thickness bound {bound}",
                self.small_r
            )));
        }
        Ok(())
    }

    /// Invariants on `R, r, k, m, n` other than the thickness bound.
    pub fn validate_structure(&self) -> Result<()> {
        let Self { big_r, small_r, k, m, n } = *self;
        if !(big_r.is_finite() && big_r > 0.0 && small_r > 0.0 && small_r < big_r) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < r < R, got R={big_r}, r={small_r}"
            )));
        }
        solve_k_for_m(m)?;
        if n * 8 != m {
            return Err(Error::InvalidParameter(format!("n = {n} is not m/8 for m = {m}")));
        }
        if !(k > 0.0 && k < 1.0) {
            return Err(Error::InvalidParameter(format!("scale k = {k} not in (0, 1)")));
        }
        let anchor = m as f64 * 3.0 * SQRT_2 * k;
        if ((anchor - 16.0) / 16.0).abs() > K_CONSISTENCY_TOL {
            return Err(Error::InvalidParameter(format!(
                "k = {k} inconsistent with m = {m}: m·3√2·k = {anchor}, expected 16"
            )));
        }
        Ok(())
    }

    pub fn kbound_satisfied(&self) -> bool {
        kbound_satisfied(self.big_r, self.small_r, self.k)
    }
}

/// Anchors `p₁..p_{n+1}` on the first-quadrant side of the core: `p₁` sits
/// `√2kR/4` from the origin and consecutive anchors are `3√2kR` apart.
pub fn anchor_points(params: &ChainParams) -> Result<Vec<Vec3>> {
    params.validate_structure()?;
    let dir = Vec3::new(1.0, 1.0, 0.0) / SQRT_2;
    let first = SQRT_2 * params.k * params.big_r / 4.0;
    let gap = 3.0 * SQRT_2 * params.k * params.big_r;
    Ok((0..=params.n).map(|i| dir * (first + gap * i as f64)).collect())
}

/// Length and width directions `(v_{i,1}, v_{i,2})` of the `i`-th torus on the
/// first side (`1 ≤ i ≤ n`); widths alternate between `3π/8` and `π/8` from
/// the vertical.
pub fn orientation_vectors(i: usize, n: usize) -> Result<(Vec3, Vec3)> {
    if i == 0 || i > n {
        return Err(Error::InvalidParameter(format!("orientation index {i} outside 1..={n}")));
    }
    let v1 = Vec3::new(1.0, 1.0, 0.0) / SQRT_2;
    let v2 = if i % 2 == 1 {
        let a = (4.0 + 2.0 * SQRT_2).sqrt() / 4.0;
        Vec3::new(a, -a, (2.0 - SQRT_2).sqrt() / 2.0)
    } else {
        let a = (4.0 - 2.0 * SQRT_2).sqrt() / 4.0;
        Vec3::new(-a, a, (2.0 + SQRT_2).sqrt() / 2.0)
    };
    Ok((v1, v2))
}

/// Centre of the vertical axis of the quarter turn `ρ₁`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Rho1Center {
    /// `(√2R, 0, 0)`, the centre of the right hole of `X₀`.
    #[default]
    HoleCenter,
    /// `(2√2R, 0, 0)`, the terminal corner of `X₀`.
    Literal,
}

impl Rho1Center {
    pub fn point(self, big_r: f64) -> Vec3 {
        match self {
            Rho1Center::HoleCenter => Vec3::new(SQRT_2 * big_r, 0.0, 0.0),
            Rho1Center::Literal => Vec3::new(2.0 * SQRT_2 * big_r, 0.0, 0.0),
        }
    }
}

/// Clockwise (seen from above) rotation by `quarter_turns·π/2` about the
/// vertical line through `center`.
pub fn rho1_power(center: Vec3, quarter_turns: u32) -> Similarity {
    Similarity::rotation_about_line(center, Vec3::z(), -(quarter_turns as f64) * FRAC_PI_2)
}

/// Half turn about the `x3`-axis.
pub fn rho2() -> Similarity {
    Similarity::rotation_about_line(Vec3::zeros(), Vec3::z(), PI)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub params: ChainParams,
    pub maps: Vec<Similarity>,
    pub components: Vec<DoubleTorus>,
}

impl Chain {
    /// Wraps externally supplied maps (e.g. read from a scene file), checking
    /// count and scale.
    pub fn from_maps(params: ChainParams, maps: Vec<Similarity>) -> Result<Self> {
        params.validate_structure()?;
        if maps.len() != params.m {
            return Err(Error::InvariantViolation(format!(
                "expected {} maps, got {}",
                params.m,
                maps.len()
            )));
        }
        for (j, s) in maps.iter().enumerate() {
            if ((s.scale() - params.k) / params.k).abs() > 1e-12 {
                return Err(Error::InvariantViolation(format!(
                    "map {} has scale {}, expected k = {}",
                    j + 1,
                    s.scale(),
                    params.k
                )));
            }
        }
        let x0 = make_canonical_double_torus(params.big_r, params.small_r)?;
        let components = maps.iter().map(|s| x0.transformed(s)).collect();
        Ok(Chain {
            params,
            maps,
            components,
        })
    }

    pub fn m(&self) -> usize {
        self.params.m
    }

    pub fn x0(&self) -> DoubleTorus {
        make_canonical_double_torus(self.params.big_r, self.params.small_r)
            .expect("validated parameters")
    }

    /// Core squares `(γ_j¹, γ_j²)` of component `j` (1-based).
    pub fn cores(&self, j: usize) -> (PolyLoop, PolyLoop) {
        self.components[j - 1].core_loops()
    }
}

/// Places `X₀` scaled by `k` with its left hole centre at `anchor`, length
/// along `v1` and width along `v2`.
fn anchored_map(k: f64, big_r: f64, anchor: Vec3, v1: Vec3, v2: Vec3) -> Result<Similarity> {
    let rot = Matrix3::from_columns(&[v1, v2, v1.cross(&v2)]);
    Similarity::new(k, rot, anchor + v1 * (SQRT_2 * k * big_r))
}

/// Builds the chain with `ρ₁` about the right hole centre.
pub fn build_chain(params: &ChainParams) -> Result<Chain> {
    build_chain_with(params, Rho1Center::HoleCenter)
}

/// First side from the anchors, the next three sides by powers of `ρ₁`, and
/// the left lobe as the half-turn image traversed in reverse:
/// `φ_{m+1-i} = ρ₂ ∘ φ_i ∘ ι₁`, so that consecutive indices keep linking
/// lobe two into lobe one.
pub fn build_chain_with(params: &ChainParams, center: Rho1Center) -> Result<Chain> {
    params.validate_structure()?;
    let ChainParams { big_r, k, m, n, .. } = *params;
    let anchors = anchor_points(params)?;
    let mut maps = Vec::with_capacity(m);
    for i in 1..=n {
        let (v1, v2) = orientation_vectors(i, n)?;
        maps.push(anchored_map(k, big_r, anchors[i - 1], v1, v2)?);
    }
    let c = center.point(big_r);
    for turns in 1..4 {
        let rho = rho1_power(c, turns);
        for i in 0..n {
            maps.push(rho.compose(&maps[i]));
        }
    }
    let half_turn = rho2();
    let mut second: Vec<Similarity> = maps
        .iter()
        .map(|phi| half_turn.compose(phi).compose(&half_turn))
        .collect();
    second.reverse();
    maps.extend(second);
    Chain::from_maps(*params, maps)
}

/// Which checks [`verify_chain`] runs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainCheckOptions {
    pub disjointness: bool,
    pub containment: bool,
    pub linking: bool,
    /// `None` checks every non-adjacent pair; `Some(s)` checks `s` pairs
    /// drawn with `seed`.
    pub nonadjacent_samples: Option<usize>,
    pub seed: u64,
}

impl Default for ChainCheckOptions {
    fn default() -> Self {
        Self {
            disjointness: true,
            containment: true,
            linking: true,
            nonadjacent_samples: None,
            seed: 0x63_6861_696e,
        }
    }
}

/// 1-based indices of the four components meeting at the origin, in the
/// order matching `T2, T3, T4, T1` of the four-way configuration.
pub fn origin_components(m: usize) -> [usize; 4] {
    let n4 = m / 2;
    [1, n4, n4 + 1, m]
}

/// Lobe of each origin component that passes through the origin.
fn origin_lobes(chain: &Chain) -> [PolyLoop; 4] {
    let [a, b, c, d] = origin_components(chain.m());
    [chain.cores(a).0, chain.cores(b).1, chain.cores(c).0, chain.cores(d).1]
}

fn is_cyclic_neighbour(i: usize, j: usize, m: usize) -> bool {
    let d = i.abs_diff(j);
    d == 1 || d == m - 1
}

fn lk_value(a: &PolyLoop, b: &PolyLoop) -> std::result::Result<(i64, f64), String> {
    gauss_linking_number(a, b)
        .map(|r| (r.lk, r.gauss_residual))
        .map_err(|e| e.to_string())
}

/// Per-row result: smallest distance, touching pairs, exact evaluations.
type PairRow = (f64, Vec<(usize, usize)>, usize);

/// Pairwise minimum distance with an AABB prefilter. Pairs whose boxes are
/// apart contribute their box gap, a lower bound of the true distance.
fn disjointness_record(chain: &Chain) -> CheckRecord {
    let boxes: Vec<Aabb> = chain.components.iter().map(|c| c.aabb()).collect();
    let m = chain.m();
    let per_row: Vec<PairRow> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut best = f64::INFINITY;
            let mut bad = Vec::new();
            let mut exact = 0;
            for j in (i + 1)..m {
                let gap = boxes[i].gap(&boxes[j]);
                let d = if gap > 0.0 {
                    gap
                } else {
                    exact += 1;
                    solid_distance(&chain.components[i], &chain.components[j])
                };
                if d <= 0.0 {
                    bad.push((i + 1, j + 1));
                }
                best = best.min(d);
            }
            (best, bad, exact)
        })
        .collect();
    let margin = per_row.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let exact: usize = per_row.iter().map(|r| r.2).sum();
    let bad: Vec<_> = per_row.into_iter().flat_map(|r| r.1).collect();
    CheckRecord::new("chain.disjoint", bad.is_empty(), margin)
        .with_detail(format!(
            "{} pairs, {exact} with overlapping boxes resolved exactly",
            m * (m - 1) / 2
        ))
        .with_offending(bad)
}

fn containment_record(chain: &Chain) -> CheckRecord {
    let x0 = chain.x0();
    let margins: Vec<Option<f64>> = chain
        .components
        .par_iter()
        .map(|c| containment_margin(&x0, c))
        .collect();
    let bad: Vec<(usize, usize)> = margins
        .iter()
        .enumerate()
        .filter(|(_, mg)| mg.is_none())
        .map(|(j, _)| (0, j + 1))
        .collect();
    // margin: smallest corner depth, or minus the number of escapees
    let margin = if bad.is_empty() {
        margins.iter().flatten().fold(f64::INFINITY, |a, &b| a.min(b))
    } else {
        count_margin(bad.len())
    };
    CheckRecord::new("chain.contained", bad.is_empty(), margin)
        .with_detail(format!(
            "{}/{} components inside X0",
            chain.m() - bad.len(),
            chain.m()
        ))
        .with_offending(bad)
}

fn consecutive_records(chain: &Chain) -> [CheckRecord; 2] {
    let m = chain.m();
    let rows: Vec<(bool, bool, f64)> = (1..=m)
        .into_par_iter()
        .map(|j| {
            let next = j % m + 1;
            let (a1, a2) = chain.cores(j);
            let (b1, b2) = chain.cores(next);
            let hopf = is_hopf_pair(&a2, &b1).unwrap_or(false);
            let mut residual: f64 = 0.0;
            let mut companions_ok = true;
            for (x, y) in [(&a2, &b2), (&a1, &b1), (&a1, &b2)] {
                match lk_value(x, y) {
                    Ok((lk, res)) => {
                        residual = residual.max(res);
                        companions_ok &= lk == 0;
                    }
                    Err(_) => companions_ok = false,
                }
            }
            if let Ok((_, res)) = lk_value(&a2, &b1) {
                residual = residual.max(res);
            }
            (hopf, companions_ok, residual)
        })
        .collect();
    let residual = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let pair = |j: usize| (j, j % m + 1);
    let hopf_bad: Vec<_> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.0)
        .map(|(i, _)| pair(i + 1))
        .collect();
    let comp_bad: Vec<_> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.1)
        .map(|(i, _)| pair(i + 1))
        .collect();
    [
        CheckRecord::new(
            "chain.consecutive_hopf",
            hopf_bad.is_empty(),
            GAUSS_RESIDUAL_TOL - residual,
        )
        .with_detail(format!("{}/{m} cyclic pairs with |lk(γj², γj+1¹)| = 1", m - hopf_bad.len()))
        .with_offending(hopf_bad),
        CheckRecord::new(
            "chain.companion_unlinked",
            comp_bad.is_empty(),
            GAUSS_RESIDUAL_TOL - residual,
        )
        .with_detail("lk(γj², γj+1²) = lk(γj¹, γj+1¹) = lk(γj¹, γj+1²) = 0")
        .with_offending(comp_bad),
    ]
}

/// All non-adjacent component pairs, or a seeded sample of them.
fn nonadjacent_pairs(m: usize, samples: Option<usize>, seed: u64) -> Vec<(usize, usize)> {
    let all: Vec<(usize, usize)> = (1..=m)
        .flat_map(|i| ((i + 1)..=m).map(move |j| (i, j)))
        .filter(|&(i, j)| !is_cyclic_neighbour(i, j, m))
        .collect();
    match samples {
        Some(s) if s < all.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut idx = sample(&mut rng, all.len(), s).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| all[i]).collect()
        }
        _ => all,
    }
}

fn nonadjacent_record(chain: &Chain, samples: Option<usize>, seed: u64) -> CheckRecord {
    let m = chain.m();
    let origin = origin_components(m);
    let pairs = nonadjacent_pairs(m, samples, seed);
    let rows: Vec<(bool, f64)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a1, a2) = chain.cores(i);
            let (b1, b2) = chain.cores(j);
            let (ai, bi) = (origin.iter().position(|&x| x == i), origin.iter().position(|&x| x == j));
            let mut ok = true;
            let mut residual: f64 = 0.0;
            for (la, x) in [(0, &a1), (1, &a2)] {
                for (lb, y) in [(0, &b1), (1, &b2)] {
                    // the origin lobes of two four-way members are linked
                    let origin_pair = matches!((ai, bi), (Some(p), Some(q))
                        if la == origin_lobe_index(p) && lb == origin_lobe_index(q));
                    if origin_pair {
                        continue;
                    }
                    match lk_value(x, y) {
                        Ok((lk, res)) => {
                            residual = residual.max(res);
                            ok &= lk == 0;
                        }
                        Err(_) => ok = false,
                    }
                }
            }
            (ok, residual)
        })
        .collect();
    let residual = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let bad: Vec<_> = rows
        .iter()
        .zip(&pairs)
        .filter(|(r, _)| !r.0)
        .map(|(_, &p)| p)
        .collect();
    let scope = match samples {
        Some(_) => format!("{} sampled non-adjacent pairs", pairs.len()),
        None => format!("all {} non-adjacent pairs", pairs.len()),
    };
    CheckRecord::new("chain.nonadjacent_unlinked", bad.is_empty(), GAUSS_RESIDUAL_TOL - residual)
        .with_detail(scope)
        .with_offending(bad)
}

/// Lobe index (0 or 1) of the `p`-th origin component that passes through
/// the origin.
fn origin_lobe_index(p: usize) -> usize {
    [0, 1, 0, 1][p]
}

fn origin_fourway_record(chain: &Chain) -> CheckRecord {
    let ids = origin_components(chain.m());
    let lobes = origin_lobes(chain);
    let mut bad = Vec::new();
    let mut residual: f64 = 0.0;
    for a in 0..4 {
        for b in (a + 1)..4 {
            let hopf = is_hopf_pair(&lobes[a], &lobes[b]).unwrap_or(false);
            if let Ok((_, res)) = lk_value(&lobes[a], &lobes[b]) {
                residual = residual.max(res);
            }
            if !hopf {
                bad.push((ids[a], ids[b]));
            }
        }
    }
    CheckRecord::new("chain.origin_fourway", bad.is_empty(), GAUSS_RESIDUAL_TOL - residual)
        .with_detail(format!(
            "components {},{},{},{}: {}/6 pairs Hopf",
            ids[0],
            ids[1],
            ids[2],
            ids[3],
            6 - bad.len()
        ))
        .with_offending(bad)
}

/// Certifies the chain. Records appear in a fixed order: disjointness,
/// containment, consecutive Hopf links, companion and non-adjacent unlinks,
/// four-way link at the origin.
pub fn verify_chain(chain: &Chain, opts: &ChainCheckOptions) -> VerificationReport {
    let mut report = VerificationReport::new();
    if opts.disjointness {
        report.push(disjointness_record(chain));
    }
    if opts.containment {
        report.push(containment_record(chain));
    }
    if opts.linking {
        for r in consecutive_records(chain) {
            report.push(r);
        }
        report.push(nonadjacent_record(chain, opts.nonadjacent_samples, opts.seed));
        report.push(origin_fourway_record(chain));
    }
    report
}
