//! Flywheel geometry, mass moment of inertia and stored kinetic energy.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};

/// Flywheel description from which the mass moment of inertia is derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FlywheelSpec {
    /// Solid disk of uniform thickness.
    UniformDisk { mass: f64, radius: f64 },
    /// Thick rim (hollow cylinder) of the given material density.
    AnnularRim {
        density: f64,
        r_outer: f64,
        r_inner: f64,
        thickness: f64,
    },
    /// Inertia known directly, kg·m².
    DirectInertia { inertia: f64 },
}

fn positive(value: f64, name: &str) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(RbsError::InvalidSpec(format!("{name} must be positive, got {value}")))
    }
}

impl FlywheelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FlywheelSpec::UniformDisk { mass, radius } => {
                positive(mass, "flywheel mass")?;
                positive(radius, "flywheel radius")
            }
            FlywheelSpec::AnnularRim {
                density,
                r_outer,
                r_inner,
                thickness,
            } => {
                positive(density, "rim density")?;
                positive(r_outer, "rim outer radius")?;
                positive(r_inner, "rim inner radius")?;
                positive(thickness, "rim thickness")?;
                if r_inner >= r_outer {
                    return Err(RbsError::InvalidSpec(format!(
                        "rim inner radius {r_inner} must be below outer radius {r_outer}"
                    )));
                }
                Ok(())
            }
            FlywheelSpec::DirectInertia { inertia } => positive(inertia, "flywheel inertia"),
        }
    }

    /// Rotating mass in kg, when the geometry defines one.
    pub fn mass(&self) -> Option<f64> {
        match *self {
            FlywheelSpec::UniformDisk { mass, .. } => Some(mass),
            FlywheelSpec::AnnularRim {
                density,
                r_outer,
                r_inner,
                thickness,
            } => Some(density * PI * (r_outer * r_outer - r_inner * r_inner) * thickness),
            FlywheelSpec::DirectInertia { .. } => None,
        }
    }

    pub fn inertia(&self) -> Result<f64> {
        inertia(self)
    }
}

/// Mass moment of inertia in kg·m².
///
/// Uniform disk: ½MR². Thick rim: ½M(r_o² + r_i²) with M from density and
/// annulus volume.
pub fn inertia(spec: &FlywheelSpec) -> Result<f64> {
    spec.validate()?;
    Ok(match *spec {
        FlywheelSpec::UniformDisk { mass, radius } => 0.5 * mass * radius * radius,
        FlywheelSpec::AnnularRim {
            r_outer, r_inner, ..
        } => {
            let mass = spec.mass().expect("rim has mass");
            0.5 * mass * (r_outer * r_outer + r_inner * r_inner)
        }
        FlywheelSpec::DirectInertia { inertia } => inertia,
    })
}

/// Rotational kinetic energy ½Iω² in joules.
pub fn kinetic_energy(inertia: f64, omega: f64) -> Result<f64> {
    positive(inertia, "inertia")?;
    if !omega.is_finite() || omega < 0.0 {
        return Err(RbsError::InvalidInput(format!(
            "angular velocity must be finite and non-negative, got {omega}"
        )));
    }
    Ok(0.5 * inertia * omega * omega)
}

/// Torque needed to impose angular acceleration `alpha`, T = Iα.
pub fn required_torque(inertia: f64, alpha: f64) -> Result<f64> {
    positive(inertia, "inertia")?;
    Ok(inertia * alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::units::rpm_to_rad_s;
    use proptest::prelude::*;

    #[test]
    fn inertia_examples() {
        let disk = FlywheelSpec::UniformDisk { mass: 2.0, radius: 1.0 };
        assert_eq!(inertia(&disk).unwrap(), 1.0);
        let direct = FlywheelSpec::DirectInertia { inertia: 0.75 };
        assert_eq!(inertia(&direct).unwrap(), 0.75);
    }

    #[test]
    fn thin_bore_rim_matches_disk() {
        let (density, r, h) = (2700.0, 0.14605, 0.01905);
        let rim = FlywheelSpec::AnnularRim {
            density,
            r_outer: r,
            r_inner: 1e-9,
            thickness: h,
        };
        let m = rim.mass().unwrap();
        let disk = FlywheelSpec::UniformDisk { mass: m, radius: r };
        assert!((inertia(&rim).unwrap() - inertia(&disk).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_geometry() {
        let bad = [
            FlywheelSpec::UniformDisk { mass: 0.0, radius: 1.0 },
            FlywheelSpec::UniformDisk { mass: 1.0, radius: -1.0 },
            FlywheelSpec::DirectInertia { inertia: 0.0 },
            FlywheelSpec::AnnularRim {
                density: 2700.0,
                r_outer: 0.1,
                r_inner: 0.1,
                thickness: 0.01,
            },
            FlywheelSpec::AnnularRim {
                density: 2700.0,
                r_outer: 0.1,
                r_inner: 0.05,
                thickness: f64::NAN,
            },
        ];
        for spec in bad {
            assert!(matches!(inertia(&spec), Err(RbsError::InvalidSpec(_))), "{spec:?}");
        }
    }

    #[test]
    fn kinetic_energy_examples() {
        assert_eq!(kinetic_energy(0.5, 100.0).unwrap(), 2500.0);
        assert_eq!(kinetic_energy(0.5, 0.0).unwrap(), 0.0);
        let ke = kinetic_energy(0.5, rpm_to_rad_s(500.0)).unwrap();
        assert!((ke - 685.39).abs() < 0.01);
        assert!(matches!(kinetic_energy(0.5, -1.0), Err(RbsError::InvalidInput(_))));
    }

    #[test]
    fn torque_examples() {
        assert_eq!(required_torque(2.0, 5.0).unwrap(), 10.0);
        assert_eq!(required_torque(2.0, 0.0).unwrap(), 0.0);
        assert_eq!(required_torque(1.0, -3.0).unwrap(), -3.0);
        assert!(required_torque(0.0, 1.0).is_err());
    }

    #[test]
    fn spec_json_shape() {
        let spec: FlywheelSpec =
            serde_json::from_str(r#"{"kind":"uniform_disk","mass":2.0,"radius":1.0}"#).unwrap();
        assert_eq!(spec, FlywheelSpec::UniformDisk { mass: 2.0, radius: 1.0 });
        assert!(serde_json::from_str::<FlywheelSpec>(
            r#"{"kind":"uniform_disk","mass":2.0,"radius":1.0,"colour":"red"}"#
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn energy_scales_quadratically(i in 1e-3f64..1e3, w in 0.0f64..1e4) {
            let e1 = kinetic_energy(i, w).unwrap();
            let e2 = kinetic_energy(i, 2.0 * w).unwrap();
            prop_assert!((e2 - 4.0 * e1).abs() <= 1e-12 * e2.max(1.0));
        }

        #[test]
        fn disk_inertia_monotone(m in 0.1f64..100.0, r in 0.01f64..2.0, dm in 0.01f64..10.0, dr in 0.001f64..1.0) {
            let base = inertia(&FlywheelSpec::UniformDisk { mass: m, radius: r }).unwrap();
            let heavier = inertia(&FlywheelSpec::UniformDisk { mass: m + dm, radius: r }).unwrap();
            let wider = inertia(&FlywheelSpec::UniformDisk { mass: m, radius: r + dr }).unwrap();
            prop_assert!(heavier > base);
            prop_assert!(wider > base);
        }
    }
}
