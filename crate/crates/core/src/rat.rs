//! Exact rational arithmetic used by all analytic quantities.
//!
//! Capacities and trade-off curves are computed over `Ratio<i64>`, never
//! floating point, so golden-value tests are equality tests. Floats appear
//! only when rendering decimals for CSV output.

use num_rational::Ratio;

pub type Rat = Ratio<i64>;

pub fn rat(num: i64, den: i64) -> Rat {
    Ratio::new(num, den)
}

pub fn int(n: i64) -> Rat {
    Ratio::from_integer(n)
}

/// Render as `num/den` (or just `num` for integers).
pub fn exact_str(r: &Rat) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering to six places, rounded to nearest (ties away from zero).
pub fn dec6(r: &Rat) -> String {
    let num = *r.numer() as i128;
    let den = *r.denom() as i128;
    let neg = (num < 0) != (den < 0);
    let (num, den) = (num.abs(), den.abs());
    let scaled = num * 1_000_000;
    let q = (scaled + den / 2) / den;
    let (whole, frac) = (q / 1_000_000, q % 1_000_000);
    let sign = if neg && q != 0 { "-" } else { "" };
    format!("{sign}{whole}.{frac:06}")
}
