//! Unit conversions used at the I/O boundary.

use std::f64::consts::PI;

/// Metres per inch.
pub const METRES_PER_INCH: f64 = 0.0254;

pub fn rpm_to_rad_s(rpm: f64) -> f64 {
    rpm * 2.0 * PI / 60.0
}

pub fn rad_s_to_rpm(rad_s: f64) -> f64 {
    rad_s * 60.0 / (2.0 * PI)
}

pub fn inches_to_m(inches: f64) -> f64 {
    inches * METRES_PER_INCH
}
