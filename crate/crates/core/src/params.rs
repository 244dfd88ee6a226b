//! Validated code parameters, derived quantities, rack layout and the
//! capacity formula.
//!
//! Node and rack indices are 0-based everywhere inside the crate; the CLI is
//! the 1-based boundary.

use crate::error::{Error, Result};
use crate::rat::{int, Rat};
use num_traits::Zero;

/// The (n, k, r, d) tuple of a rack-based storage system, with the derived
/// quantities m = floor(kr/n) and t = k mod (n/r).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParams {
    n: usize,
    k: usize,
    r: usize,
    d: usize,
}

impl CodeParams {
    /// Validate raw parameters. `d = None` defaults to r - 1.
    pub fn new(n: usize, k: usize, r: usize, d: Option<usize>) -> Result<Self> {
        if r == 0 || n == 0 || n % r != 0 {
            return Err(Error::NotMultiple { n, r });
        }
        if k == 0 || k >= n {
            return Err(Error::ThresholdOutOfRange { k, n });
        }
        let m = k * r / n;
        let d = d.unwrap_or(r.saturating_sub(1));
        if d < m || d + 1 > r {
            return Err(Error::DegreeOutOfRange { d, m, max: r - 1 });
        }
        Ok(CodeParams { n, k, r, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn nodes_per_rack(&self) -> usize {
        self.n / self.r
    }

    /// m = floor(kr/n), the number of full data racks in a systematic layout.
    pub fn m(&self) -> usize {
        self.k * self.r / self.n
    }

    /// t = k mod (n/r), the number of data nodes in the hybrid rack.
    pub fn t(&self) -> usize {
        self.k % self.nodes_per_rack()
    }

    /// Capacity of the system for per-node storage `alpha` and per-helper
    /// bandwidth `beta`: k*alpha + sum over the first m racks of
    /// min{(d - l + 1)*beta - alpha, 0}.
    pub fn capacity(&self, alpha: &Rat, beta: &Rat) -> Rat {
        let mut total = int(self.k as i64) * alpha;
        for l in 1..=self.m() {
            let term = int((self.d - l + 1) as i64) * beta - alpha;
            if term < Rat::zero() {
                total += term;
            }
        }
        total
    }
}

/// Role a rack plays in a systematic layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RackRole {
    Data,
    Hybrid,
    Coded,
    Uniform,
}

/// Mapping of node indices to (rack, slot), with the relayer convention:
/// slot 0 of each rack is the relayer.
#[derive(Debug, Clone)]
pub struct RackLayout {
    nodes_per_rack: usize,
    racks: usize,
    roles: Vec<RackRole>,
}

impl RackLayout {
    /// Systematic layout: the first m racks are data racks, rack m is hybrid
    /// iff t != 0, the remainder are coded racks.
    pub fn systematic(p: &CodeParams) -> Self {
        let m = p.m();
        let t = p.t();
        let roles = (0..p.r())
            .map(|h| {
                if h < m {
                    RackRole::Data
                } else if h == m && t != 0 {
                    RackRole::Hybrid
                } else {
                    RackRole::Coded
                }
            })
            .collect();
        RackLayout {
            nodes_per_rack: p.nodes_per_rack(),
            racks: p.r(),
            roles,
        }
    }

    /// Uniform layout (every rack alike), used by the minimum-bandwidth code.
    pub fn uniform(p: &CodeParams) -> Self {
        RackLayout {
            nodes_per_rack: p.nodes_per_rack(),
            racks: p.r(),
            roles: vec![RackRole::Uniform; p.r()],
        }
    }

    pub fn rack_of(&self, node: usize) -> usize {
        node / self.nodes_per_rack
    }

    pub fn slot_of(&self, node: usize) -> usize {
        node % self.nodes_per_rack
    }

    pub fn node_at(&self, rack: usize, slot: usize) -> usize {
        rack * self.nodes_per_rack + slot
    }

    /// The designated relayer of a rack (slot 0 by relabeling).
    pub fn relayer(&self, rack: usize) -> usize {
        self.node_at(rack, 0)
    }

    pub fn role(&self, rack: usize) -> RackRole {
        self.roles[rack]
    }

    pub fn racks(&self) -> usize {
        self.racks
    }

    pub fn nodes_per_rack(&self) -> usize {
        self.nodes_per_rack
    }

    pub fn nodes_in_rack(&self, rack: usize) -> impl Iterator<Item = usize> {
        let base = rack * self.nodes_per_rack;
        base..base + self.nodes_per_rack
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn derived_quantities() {
        let p = CodeParams::new(12, 8, 4, Some(3)).unwrap();
        assert_eq!((p.m(), p.t()), (2, 2));
        let p = CodeParams::new(9, 5, 3, Some(2)).unwrap();
        assert_eq!((p.m(), p.t()), (1, 2));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            CodeParams::new(10, 8, 4, None),
            Err(Error::NotMultiple { n: 10, r: 4 })
        ));
        assert!(matches!(
            CodeParams::new(12, 12, 4, None),
            Err(Error::ThresholdOutOfRange { .. })
        ));
        // d below m
        assert!(matches!(
            CodeParams::new(12, 8, 4, Some(1)),
            Err(Error::DegreeOutOfRange { .. })
        ));
        // d beyond r - 1
        assert!(matches!(
            CodeParams::new(12, 8, 4, Some(4)),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn default_degree_is_r_minus_1() {
        let p = CodeParams::new(12, 8, 4, None).unwrap();
        assert_eq!(p.d(), 3);
    }

    #[test]
    fn capacity_golden_values() {
        let p = CodeParams::new(12, 8, 4, Some(3)).unwrap();
        assert_eq!(p.capacity(&int(2), &int(1)), int(16));
        assert_eq!(p.capacity(&int(3), &int(1)), int(23));
        let p = CodeParams::new(9, 5, 3, Some(2)).unwrap();
        assert_eq!(p.capacity(&int(1), &int(1)), int(5));
        // rational inputs stay exact
        assert_eq!(p.capacity(&rat(1, 5), &rat(1, 10)), int(1));
    }

    #[test]
    fn capacity_equals_k_alpha_when_alpha_small() {
        let p = CodeParams::new(12, 8, 4, Some(3)).unwrap();
        // alpha <= (d - m + 1) beta means no negative terms
        assert_eq!(p.capacity(&rat(1, 2), &rat(1, 4)), rat(8, 2));
    }

    #[test]
    fn systematic_layout_roles() {
        let p = CodeParams::new(12, 8, 4, Some(3)).unwrap();
        let layout = RackLayout::systematic(&p);
        assert_eq!(layout.role(0), RackRole::Data);
        assert_eq!(layout.role(1), RackRole::Data);
        assert_eq!(layout.role(2), RackRole::Hybrid);
        assert_eq!(layout.role(3), RackRole::Coded);
        assert_eq!(layout.relayer(2), 6);
        assert_eq!(layout.rack_of(7), 2);
        assert_eq!(layout.slot_of(7), 1);

        // t = 0: no hybrid rack
        let p = CodeParams::new(12, 9, 4, Some(3)).unwrap();
        let layout = RackLayout::systematic(&p);
        assert_eq!(layout.role(2), RackRole::Data);
        assert_eq!(layout.role(3), RackRole::Coded);
    }
}
