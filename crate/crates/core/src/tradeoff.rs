//! Closed-form trade-off curves between storage and cross-rack repair
//! bandwidth, their extreme points, and the comparison points for plain
//! regenerating codes deployed on racks and for the related minimum-storage /
//! minimum-bandwidth constructions.
//!
//! Everything here is exact rational arithmetic; see [`crate::rat`].

use crate::error::{Error, Result};
use crate::params::CodeParams;
use crate::rat::{dec6, exact_str, int, rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLabel {
    Msrr,
    Mbrr,
    Msr,
    Mbr,
    SohnMs,
    SohnMb,
    Interior,
}

/// A point on a storage/cross-rack-bandwidth trade-off curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TradeoffPoint {
    pub alpha: Rat,
    pub gamma: Rat,
    pub label: PointLabel,
}

fn big(v: usize) -> Rat {
    int(v as i64)
}

/// Breakpoint f(i) = 2B / (2k(d-m+1) + i(2k-i-1)) of the rack-aware curve.
fn breakpoint(p: &CodeParams, file_size: &Rat, i: usize) -> Rat {
    let (k, d, m) = (p.k() as i64, p.d() as i64, p.m() as i64);
    let i = i as i64;
    let den = 2 * k * (d - m + 1) + i * (2 * k - i - 1);
    file_size * rat(2, den)
}

/// Slope factor g(i) = i(2d - 2m + i + 1) / (2d).
fn slope(p: &CodeParams, i: usize) -> Rat {
    let (d, m) = (p.d() as i64, p.m() as i64);
    let i = i as i64;
    rat(i * (2 * d - 2 * m + i + 1), 2 * d)
}

/// Minimum feasible storage alpha*(beta) for a given per-helper bandwidth.
///
/// Piecewise: B/k on [f(0), inf); (B - g(l) d beta)/(k - l) on [f(l), f(l-1));
/// the minimum-bandwidth value at beta = f(m-1). Below f(m-1) no storage
/// satisfies the capacity bound.
pub fn min_storage(p: &CodeParams, file_size: &Rat, beta: &Rat) -> Result<Rat> {
    let m = p.m();
    if m == 0 {
        return Ok(file_size / big(p.k()));
    }
    let floor = breakpoint(p, file_size, m - 1);
    if *beta < floor {
        return Err(Error::BelowMinimumBandwidth(
            exact_str(beta),
            exact_str(&floor),
        ));
    }
    if *beta == floor {
        return Ok(mbrr_value(p, file_size));
    }
    if *beta >= breakpoint(p, file_size, 0) {
        return Ok(file_size / big(p.k()));
    }
    for l in 1..m {
        if *beta >= breakpoint(p, file_size, l) {
            let used = slope(p, l) * big(p.d()) * beta;
            return Ok((file_size - used) / big(p.k() - l));
        }
    }
    unreachable!("breakpoints cover [f(m-1), f(0))")
}

fn mbrr_value(p: &CodeParams, file_size: &Rat) -> Rat {
    let (k, d, m) = (p.k() as i64, p.d() as i64, p.m() as i64);
    // Bd / ((k-m)d + m(d - (m-1)/2)) = 2Bd / (2kd - m(m-1))
    file_size * rat(2 * d, 2 * k * d - m * (m - 1))
}

/// The two extreme points of the rack-aware trade-off curve.
///
/// Minimum storage: (B/k, Bd/(k(d-m+1))). Minimum bandwidth: storage equals
/// cross-rack bandwidth, both Bd/((k-m)d + m(d-(m-1)/2)).
pub fn rrc_extreme_points(p: &CodeParams, file_size: &Rat) -> (TradeoffPoint, TradeoffPoint) {
    let (k, d, m) = (p.k() as i64, p.d() as i64, p.m() as i64);
    let msrr = TradeoffPoint {
        alpha: file_size / int(k),
        gamma: file_size * rat(d, k * (d - m + 1)),
        label: PointLabel::Msrr,
    };
    let v = mbrr_value(p, file_size);
    let mbrr = TradeoffPoint {
        alpha: v,
        gamma: v,
        label: PointLabel::Mbrr,
    };
    (msrr, mbrr)
}

/// Repair degree of a plain regenerating code deployed on racks:
/// d' = dn/r + n/r - 1 helper nodes.
pub fn rc_degree(p: &CodeParams) -> usize {
    (p.d() + 1) * p.nodes_per_rack() - 1
}

fn rc_check(p: &CodeParams) -> Result<usize> {
    let dp = rc_degree(p);
    if dp < p.k() {
        return Err(Error::UnsupportedRegime(format!(
            "RC degree d' = {} must be at least k = {}",
            dp,
            p.k()
        )));
    }
    Ok(dp)
}

fn rc_slope(p: &CodeParams, i: usize) -> Rat {
    let dp = rc_degree(p) as i64;
    let k = p.k() as i64;
    let i = i as i64;
    rat(i * (2 * dp - 2 * k + i + 1), 2 * dp)
}

fn rc_breakpoint_total(p: &CodeParams, file_size: &Rat, i: usize) -> Rat {
    let dp = rc_degree(p) as i64;
    let k = p.k() as i64;
    let i = i as i64;
    file_size * rat(2 * dp, 2 * k * (dp - k + 1) + i * (2 * k - i - 1))
}

/// Fraction of an RC repair download that crosses racks: (dn/r) / d'.
fn rc_cross_fraction(p: &CodeParams) -> Rat {
    rat((p.d() * p.nodes_per_rack()) as i64, rc_degree(p) as i64)
}

/// Minimum storage of an RC(n, k, d') on racks as a function of the
/// cross-rack part gamma' of its repair bandwidth.
pub fn rc_min_storage(p: &CodeParams, file_size: &Rat, gamma_prime: &Rat) -> Result<Rat> {
    rc_check(p)?;
    let k = p.k();
    let frac = rc_cross_fraction(p);
    let thr = |i: usize| frac * rc_breakpoint_total(p, file_size, i);
    if *gamma_prime >= thr(0) {
        return Ok(file_size / big(k));
    }
    let floor = thr(k - 1);
    if *gamma_prime < floor {
        return Err(Error::BelowMinimumBandwidth(
            exact_str(gamma_prime),
            exact_str(&floor),
        ));
    }
    for i in 1..k {
        if *gamma_prime >= thr(i) {
            // total download is gamma' scaled back up by d' / (dn/r)
            let total = gamma_prime / frac;
            return Ok((file_size - rc_slope(p, i) * total) / big(k - i));
        }
    }
    unreachable!("thresholds cover [thr(k-1), thr(0))")
}

/// Cross-rack repair bandwidths of RC at its minimum-storage and
/// minimum-bandwidth points.
pub fn rc_extreme_gammas(p: &CodeParams, file_size: &Rat) -> Result<(Rat, Rat)> {
    rc_check(p)?;
    let k = p.k() as i64;
    let dnr = (p.d() * p.nodes_per_rack()) as i64;
    let nr = p.nodes_per_rack() as i64;
    let msr = file_size * rat(dnr, k * (dnr + nr - k));
    let mbr = file_size * rat(2 * dnr, k * (2 * dnr + 2 * nr - k - 1));
    Ok((msr, mbr))
}

/// Extreme points of the RC-on-racks curve, storage included.
pub fn rc_extreme_points(p: &CodeParams, file_size: &Rat) -> Result<(TradeoffPoint, TradeoffPoint)> {
    let (g_msr, g_mbr) = rc_extreme_gammas(p, file_size)?;
    let msr = TradeoffPoint {
        alpha: file_size / big(p.k()),
        gamma: g_msr,
        label: PointLabel::Msr,
    };
    let mbr = TradeoffPoint {
        alpha: rc_min_storage(p, file_size, &g_mbr)?,
        gamma: g_mbr,
        label: PointLabel::Mbr,
    };
    Ok((msr, mbr))
}

/// Comparison points for the two-bandwidth-class codes: the minimum-storage
/// point (normalized to the given file size) and the minimum-bandwidth point
/// (unnormalized, one symbol per remote helper), plus the file size the
/// minimum-bandwidth construction stores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SohnPoints {
    pub ms: TradeoffPoint,
    pub mb_unnormalized: TradeoffPoint,
    pub mb_file_size: Rat,
}

impl SohnPoints {
    /// Minimum-bandwidth point rescaled so its file size matches `file_size`.
    pub fn mb_normalized(&self, file_size: &Rat) -> TradeoffPoint {
        let scale = file_size / self.mb_file_size;
        TradeoffPoint {
            alpha: self.mb_unnormalized.alpha * scale,
            gamma: self.mb_unnormalized.gamma * scale,
            label: PointLabel::SohnMb,
        }
    }
}

/// Points of the related construction that downloads from every surviving
/// node, at remote/local download ratio `epsilon`.
pub fn related_points(p: &CodeParams, file_size: &Rat, epsilon: &Rat) -> Result<SohnPoints> {
    if *epsilon <= int(0) {
        return Err(Error::UnsupportedRegime("epsilon must be positive".into()));
    }
    let (n, k, nr) = (p.n() as i64, p.k() as i64, p.nodes_per_rack() as i64);
    let (m, t) = (p.m() as i64, p.t() as i64);
    let remote = int(n - nr);
    let ms_alpha = file_size / int(k);
    let ms = TradeoffPoint {
        alpha: ms_alpha,
        gamma: ms_alpha * remote / int(n - k),
        label: PointLabel::SohnMs,
    };
    // beta_c = 1, beta_I = 1/epsilon
    let alpha_u = int(nr - 1) / epsilon + remote;
    let gamma_u = remote;
    let dependents = rat(1, 2) * (epsilon.recip() - int(1)) * int(m * nr * nr + t * t - k);
    let b_u = int(k) * alpha_u - dependents - rat(k * (k - 1), 2);
    Ok(SohnPoints {
        ms,
        mb_unnormalized: TradeoffPoint {
            alpha: alpha_u,
            gamma: gamma_u,
            label: PointLabel::SohnMb,
        },
        mb_file_size: b_u,
    })
}

/// All k in [1, n-1] for which the minimum-bandwidth rack-aware code has
/// rate above one half, at d = r - 1: 2kd - m(m-1) > nd.
pub fn mbrr_high_rate_range(r: usize, n: usize) -> Vec<usize> {
    assert!(r >= 2 && n % r == 0, "n must be a positive multiple of r");
    let d = (r - 1) as i64;
    (1..n)
        .filter(|&k| {
            let m = (k * r / n) as i64;
            2 * (k as i64) * d > (n as i64) * d + m * (m - 1)
        })
        .collect()
}

/// Sampled rack-aware curve from the minimum-bandwidth point to the
/// minimum-storage point, extremes included and labeled.
pub fn rrc_curve(p: &CodeParams, file_size: &Rat, samples_per_segment: usize) -> Vec<TradeoffPoint> {
    let m = p.m();
    let d = big(p.d());
    let (msrr, mbrr) = rrc_extreme_points(p, file_size);
    if m <= 1 {
        // curve degenerates to a single point
        return vec![mbrr];
    }
    let mut points = vec![mbrr];
    let lo = breakpoint(p, file_size, m - 1);
    let hi = breakpoint(p, file_size, 0);
    let steps = (samples_per_segment.max(1) * (m - 1)) as i64;
    for s in 1..steps {
        let beta = lo + (hi - lo) * rat(s, steps);
        if let Ok(alpha) = min_storage(p, file_size, &beta) {
            points.push(TradeoffPoint {
                alpha,
                gamma: d * beta,
                label: PointLabel::Interior,
            });
        }
    }
    points.push(msrr);
    points
}

/// Corner points of the RC-on-racks curve, from minimum bandwidth to minimum
/// storage.
pub fn rc_curve(p: &CodeParams, file_size: &Rat) -> Result<Vec<TradeoffPoint>> {
    rc_check(p)?;
    let frac = rc_cross_fraction(p);
    let mut points = Vec::new();
    for i in (0..p.k()).rev() {
        let gamma = frac * rc_breakpoint_total(p, file_size, i);
        let alpha = rc_min_storage(p, file_size, &gamma)?;
        let label = if i == p.k() - 1 {
            PointLabel::Mbr
        } else if i == 0 {
            PointLabel::Msr
        } else {
            PointLabel::Interior
        };
        points.push(TradeoffPoint { alpha, gamma, label });
    }
    Ok(points)
}

pub const CSV_HEADER: &str = "family,n,k,r,d,B,alpha_exact,gamma_exact,alpha_dec,gamma_dec";

/// One CSV row in the schema
/// `family,n,k,r,d,B,alpha_exact,gamma_exact,alpha_dec,gamma_dec`.
pub fn csv_row(family: &str, p: &CodeParams, file_size: &Rat, pt: &TradeoffPoint) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        family,
        p.n(),
        p.k(),
        p.r(),
        p.d(),
        exact_str(file_size),
        exact_str(&pt.alpha),
        exact_str(&pt.gamma),
        dec6(&pt.alpha),
        dec6(&pt.gamma),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1283(d: usize) -> CodeParams {
        CodeParams::new(12, 8, 4, Some(d)).unwrap()
    }

    #[test]
    fn min_storage_piecewise() {
        let p = p1283(3);
        let b = int(1);
        // minimum storage region starts at beta = f(0) = 1/16
        assert_eq!(min_storage(&p, &b, &rat(1, 16)).unwrap(), rat(1, 8));
        assert_eq!(min_storage(&p, &b, &int(1)).unwrap(), rat(1, 8));
        // middle segment: evaluated with g(1) d = 2
        assert_eq!(min_storage(&p, &b, &rat(1, 20)).unwrap(), rat(9, 70));
        // minimum bandwidth endpoint beta = f(1) = 1/23
        assert_eq!(min_storage(&p, &b, &rat(1, 23)).unwrap(), rat(3, 23));
        // below it: infeasible
        assert!(matches!(
            min_storage(&p, &b, &rat(1, 24)),
            Err(Error::BelowMinimumBandwidth(..))
        ));
    }

    #[test]
    fn extreme_points_fig_values() {
        let p = p1283(3);
        let (msrr, mbrr) = rrc_extreme_points(&p, &int(1));
        assert_eq!(msrr.alpha, rat(1, 8));
        assert_eq!(msrr.gamma, rat(3, 16));
        assert_eq!(mbrr.alpha, rat(3, 23));
        assert_eq!(mbrr.gamma, rat(3, 23));
    }

    #[test]
    fn one_node_per_rack_reduces_to_msr() {
        // r = n: the minimum-storage point matches the classical MSR formula
        let p = CodeParams::new(8, 5, 8, Some(7)).unwrap();
        let (msrr, _) = rrc_extreme_points(&p, &int(1));
        // B(n-1)/(k(n-k)) with B = 1
        assert_eq!(msrr.gamma, rat(7, 5 * 3));
    }

    #[test]
    fn rc_extremes_fig_values() {
        let p = p1283(3);
        let (msr, mbr) = rc_extreme_gammas(&p, &int(1)).unwrap();
        assert_eq!(msr, rat(9, 32));
        assert_eq!(mbr, rat(3, 20));
        let (_, mbr_pt) = rc_extreme_points(&p, &int(1)).unwrap();
        assert_eq!(mbr_pt.alpha, rat(11, 60));
        assert_eq!(mbr_pt.gamma, rat(3, 20));
    }

    #[test]
    fn rc_min_storage_cases() {
        let p = p1283(3);
        let b = int(1);
        assert_eq!(rc_min_storage(&p, &b, &int(4)).unwrap(), rat(1, 8));
        // hand evaluation of the i = 1 corner for (12, 8, 3, 2), d' = 11
        let p2 = CodeParams::new(12, 8, 3, Some(2)).unwrap();
        assert_eq!(rc_degree(&p2), 11);
        let frac = rat(8, 11);
        let corner_gamma = frac * rc_breakpoint_total(&p2, &b, 1);
        let expect = (int(1) - rc_slope(&p2, 1) * rc_breakpoint_total(&p2, &b, 1)) / int(7);
        assert_eq!(rc_min_storage(&p2, &b, &corner_gamma).unwrap(), expect);
        assert!(matches!(
            rc_min_storage(&p, &b, &rat(1, 100)),
            Err(Error::BelowMinimumBandwidth(..))
        ));
    }

    #[test]
    fn sohn_points() {
        let p = p1283(3);
        let pts = related_points(&p, &int(1), &rat(1, 4)).unwrap();
        assert_eq!(pts.ms.gamma, rat(9, 32));
        // equality with the RC minimum-storage cross-rack bandwidth
        let (msr, _) = rc_extreme_gammas(&p, &int(1)).unwrap();
        assert_eq!(pts.ms.gamma, msr);

        let p2 = CodeParams::new(20, 11, 5, Some(4)).unwrap();
        let pts2 = related_points(&p2, &int(1), &int(1)).unwrap();
        assert_eq!(pts2.mb_unnormalized.gamma, int(16));
        assert_eq!(pts2.mb_unnormalized.alpha, int(19));
        // k alpha - k(k-1)/2 with no dependent-symbol correction at epsilon = 1
        assert_eq!(pts2.mb_file_size, int(11 * 19 - 55));
    }

    #[test]
    fn high_rate_table_entries() {
        assert_eq!(mbrr_high_rate_range(4, 8), vec![5, 6, 7]);
        assert_eq!(mbrr_high_rate_range(5, 15), (8..=14).collect::<Vec<_>>());
        assert_eq!(mbrr_high_rate_range(6, 24), (13..=23).collect::<Vec<_>>());
    }

    #[test]
    fn curve_monotone_and_continuous() {
        let p = p1283(3);
        let b = int(1);
        let pts = rrc_curve(&p, &b, 8);
        for w in pts.windows(2) {
            assert!(w[0].gamma < w[1].gamma);
            assert!(w[0].alpha >= w[1].alpha);
        }
        // both adjacent formulas agree at every interior breakpoint
        let m = p.m();
        for l in 1..m {
            let beta = breakpoint(&p, &b, l);
            let from_segment = (b - slope(&p, l) * big(p.d()) * beta) / big(p.k() - l);
            assert_eq!(min_storage(&p, &b, &beta).unwrap(), from_segment);
        }
    }

    #[test]
    fn monotone_in_k_within_block() {
        // gamma strictly decreases as k increases while m stays fixed
        let b = int(1);
        let mut last: Option<(Rat, Rat)> = None;
        for k in 7..=8 {
            let p = CodeParams::new(12, k, 4, Some(3)).unwrap();
            assert_eq!(p.m(), 2);
            let (msrr, mbrr) = rrc_extreme_points(&p, &b);
            if let Some((g_msrr, g_mbrr)) = last {
                assert!(msrr.gamma < g_msrr);
                assert!(mbrr.gamma < g_mbrr);
            }
            last = Some((msrr.gamma, mbrr.gamma));
        }
    }
}
