//! The defining sequence `X_n = ⋃ φ_j(X_{n-1})`, point membership by
//! pulling back through the inverse similarities, and the symmetry maps.

use std::fmt;

use rayon::prelude::*;

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::geometry::{contains_solid, DoubleTorus, Similarity, Transform, Vec3};
use crate::report::{count_margin, CheckRecord};

/// Default cap on the number of components produced by [`expand_level`].
pub const DEFAULT_LEVEL_BUDGET: u128 = 100_000;

/// A word over `1..=m`; the empty word addresses `X₀`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(pub Vec<usize>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn child(&self, letter: usize) -> Address {
        let mut w = self.0.clone();
        w.push(letter);
        Address(w)
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        match self.0.iter().find(|&&j| j == 0 || j > m) {
            Some(&letter) => Err(Error::AddressOutOfRange { letter, m }),
            None => Ok(()),
        }
    }
}

/// `X` for the root, `X_12_7` for the word `(12, 7)`.
impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X")?;
        for j in &self.0 {
            write!(f, "_{j}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub address: Address,
    pub map: Similarity,
    pub solid: DoubleTorus,
}

fn compose_word(chain: &Chain, word: &[usize]) -> Similarity {
    word.iter()
        .fold(Similarity::identity(), |acc, &j| acc.compose(&chain.maps[j - 1]))
}

/// The component `φ_{w₁} ∘ … ∘ φ_{wₙ}(X₀)`.
pub fn component(chain: &Chain, address: &Address) -> Result<Component> {
    address.validate(chain.m())?;
    let map = compose_word(chain, &address.0);
    Ok(Component {
        address: address.clone(),
        solid: chain.x0().transformed(&map),
        map,
    })
}

/// All `mⁿ` components of `X_n` in lexicographic address order.
pub fn expand_level(chain: &Chain, level: usize, budget: u128) -> Result<Vec<Component>> {
    let m = chain.m();
    let count = (m as u128).checked_pow(level as u32).unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded {
            level,
            count,
            budget,
        });
    }
    let x0 = chain.x0();
    let count = count as usize;
    let out = (0..count)
        .into_par_iter()
        .map(|idx| {
            let mut word = vec![0; level];
            let mut rest = idx;
            for slot in word.iter_mut().rev() {
                *slot = rest % m + 1;
                rest /= m;
            }
            let map = compose_word(chain, &word);
            Component {
                address: Address(word),
                solid: x0.transformed(&map),
                map,
            }
        })
        .collect();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipResult {
    /// Still inside after `depth` pullbacks, through the children `prefix`.
    Contained { prefix: Address, depth: usize },
    /// Left `X₀` after `level` pullbacks.
    EscapedAt(usize),
}

/// Follows `x` down the defining sequence: while `x ∈ X₀`, find the child
/// `X_{1,j}` holding it and replace `x` by `φ_j⁻¹(x)`. Ties go to the lowest
/// index.
pub fn membership(chain: &Chain, x: &Vec3, max_depth: usize) -> MembershipResult {
    let x0 = chain.x0();
    let boxes: Vec<_> = chain.components.iter().map(|c| c.aabb()).collect();
    let tol = crate::geometry::MEMBERSHIP_TOL * chain.params.big_r;
    let mut p = *x;
    let mut prefix = Vec::with_capacity(max_depth);
    for level in 0..max_depth {
        if !x0.contains_point(&p) {
            return MembershipResult::EscapedAt(level);
        }
        let hit = (0..chain.m())
            .find(|&j| boxes[j].contains(&p, tol) && chain.components[j].contains_point(&p));
        match hit {
            Some(j) => {
                prefix.push(j + 1);
                p = chain.maps[j].apply_inverse_point(&p);
            }
            None => return MembershipResult::EscapedAt(level + 1),
        }
    }
    if !x0.contains_point(&p) {
        return MembershipResult::EscapedAt(max_depth);
    }
    MembershipResult::Contained {
        prefix: Address(prefix),
        depth: max_depth,
    }
}

/// Radial power map `|x| ↦ |x|^d` on balls about the origin; `B₀ = B(0, 4)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerMapParams {
    pub d: u32,
    pub inner_radius: f64,
    pub outer_radius: f64,
}

impl PowerMapParams {
    pub fn new(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("degree d = {d} must be at least 2")));
        }
        Ok(Self {
            d,
            inner_radius: 4.0,
            outer_radius: 4f64.powi(d as i32),
        })
    }

    /// Degree `d` with `d² = m`, as needed to pair the chain with the power map.
    pub fn for_chain(m: usize) -> Result<Self> {
        let d = (m as f64).sqrt().round() as u32;
        if (d as usize) * (d as usize) != m {
            return Err(Error::InvalidParameter(format!("m = {m} is not a perfect square")));
        }
        Self::new(d)
    }
}

/// Radius after `t` power-map steps from radius `s`; `overflowed` is set when
/// the value is not finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeRadius {
    pub radius: f64,
    pub overflowed: bool,
}

/// `s^(d^t)`.
pub fn escape_radius_model(s: f64, t: u32, p: &PowerMapParams) -> Result<EscapeRadius> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::InvalidParameter(format!("radius {s} must exceed 1")));
    }
    let mut r = s;
    for _ in 0..t {
        r = r.powi(p.d as i32);
        if !r.is_finite() {
            return Ok(EscapeRadius {
                radius: f64::INFINITY,
                overflowed: true,
            });
        }
    }
    Ok(EscapeRadius {
        radius: r,
        overflowed: false,
    })
}

/// Half turn about the `x3`-axis.
pub fn involution_iota1(x: &Vec3) -> Vec3 {
    Vec3::new(-x.x, -x.y, x.z)
}

/// Half turn about the `x1`-axis.
pub fn involution_iota2(x: &Vec3) -> Vec3 {
    Vec3::new(x.x, -x.y, -x.z)
}

/// Degree `m/4` winding about the `x3`-axis: `(ρ, θ, x3) ↦ (ρ, θ·m/4, x3)`.
pub fn winding_omega(x: &Vec3, m: usize) -> Result<Vec3> {
    if m == 0 || !m.is_multiple_of(4) {
        return Err(Error::InvalidParameter(format!("m = {m} is not divisible by 4")));
    }
    let rho = x.x.hypot(x.y);
    let theta = x.y.atan2(x.x) * (m / 4) as f64;
    Ok(Vec3::new(rho * theta.cos(), rho * theta.sin(), x.z))
}

/// Worst vertexwise distance between `ι₁(X_{1,j})` and `X_{1,m+1-j}`, over
/// all `j`. Beam corner sets are compared as sets, which bounds the
/// Hausdorff distance of the solids.
pub fn level1_symmetry_defect(chain: &Chain) -> f64 {
    let m = chain.m();
    (0..m)
        .map(|j| {
            let a: Vec<Vec3> = corner_set(&chain.components[j]).iter().map(involution_iota1).collect();
            let b = corner_set(&chain.components[m - 1 - j]);
            point_set_hausdorff(&a, &b)
        })
        .fold(0.0, f64::max)
}

fn corner_set(d: &DoubleTorus) -> Vec<Vec3> {
    d.beams().iter().flat_map(|b| b.vertices()).collect()
}

fn point_set_hausdorff(a: &[Vec3], b: &[Vec3]) -> f64 {
    let one_way = |p: &[Vec3], q: &[Vec3]| {
        p.iter()
            .map(|x| q.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Whether `ι₁` permutes the level-one components by `j ↔ m+1-j`, within
/// `1e-9·R`.
pub fn check_level1_symmetry(chain: &Chain) -> bool {
    level1_symmetry_defect(chain) <= 1e-9 * chain.params.big_r
}

pub fn symmetry_record(chain: &Chain) -> CheckRecord {
    let defect = level1_symmetry_defect(chain);
    let tol = 1e-9 * chain.params.big_r;
    CheckRecord::new("sequence.iota1_symmetry", defect <= tol, tol - defect).with_detail(format!(
        "pairing j <-> {}-j, worst corner defect {defect:.3e}",
        chain.m() + 1
    ))
}

/// `ln m / ln(1/k)`.
pub fn similarity_dimension(m: usize, k: f64) -> Result<f64> {
    if m < 2 || !(k > 0.0 && k < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need m >= 2 and 0 < k < 1, got m={m}, k={k}"
        )));
    }
    Ok((m as f64).ln() / (1.0 / k).ln())
}

/// Checks `child ⊂ parent` for every component of levels `1..=depth`.
///
/// Beyond level one this is implied by similarity, but every child is still
/// tested directly against its parent.
pub fn nesting_records(chain: &Chain, depth: usize, budget: u128) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let mut parents = vec![component(chain, &Address::root()).expect("root")];
    for level in 1..=depth {
        let m = chain.m();
        let count = parents.len() as u128 * m as u128;
        if count > budget {
            out.push(
                CheckRecord::new(format!("sequence.nesting_level{level}"), false, f64::NAN)
                    .with_detail(format!("{count} components exceed budget {budget}")),
            );
            break;
        }
        let children: Vec<(Component, bool)> = parents
            .par_iter()
            .flat_map_iter(|p| {
                (1..=m).map(move |j| {
                    let map = p.map.compose(&chain.maps[j - 1]);
                    let c = Component {
                        address: p.address.child(j),
                        solid: chain.x0().transformed(&map),
                        map,
                    };
                    let ok = contains_solid(&p.solid, &c.solid);
                    (c, ok)
                })
            })
            .collect();
        let failed = children.iter().filter(|c| !c.1).count();
        out.push(
            CheckRecord::new(
                format!("sequence.nesting_level{level}"),
                failed == 0,
                count_margin(failed),
            )
            .with_detail(format!(
                "{}/{} children inside their parents",
                children.len() - failed,
                children.len()
            )),
        );
        parents = children.into_iter().map(|c| c.0).collect();
    }
    out
}
