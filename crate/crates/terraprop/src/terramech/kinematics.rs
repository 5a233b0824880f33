//! Slip and contact-entry kinematics.

use super::TerramechError;
use crate::math;

/// Below this rim speed (m/s) the slip denominator is treated as zero.
pub const MIN_RIM_SPEED: f64 = 1e-3;

/// Longitudinal slip, clamped into [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlipRatio {
    pub value: f64,
    /// True when the raw ratio fell outside [0, 1] and was clamped.
    pub clamped: bool,
}

/// Slip of a driven wheel: `(r_s * omega - v) / (r_s * omega)`.
///
/// Values outside [0, 1] (towing, over-speed measurement noise) are
/// clamped and flagged. Reverse or stationary driving is out of scope:
/// the rim speed must exceed [`MIN_RIM_SPEED`].
pub fn slip_ratio(
    angular_velocity: f64,
    forward_speed: f64,
    slip_radius: f64,
) -> Result<SlipRatio, TerramechError> {
    if !angular_velocity.is_finite() {
        return Err(TerramechError::NonFinite { name: "angular velocity" });
    }
    if !forward_speed.is_finite() {
        return Err(TerramechError::NonFinite { name: "forward speed" });
    }
    if !slip_radius.is_finite() {
        return Err(TerramechError::NonFinite { name: "slip radius" });
    }
    if slip_radius <= 0.0 {
        return Err(TerramechError::NonPositive { name: "slip radius", value: slip_radius });
    }
    let rim_speed = slip_radius * angular_velocity;
    if rim_speed <= MIN_RIM_SPEED {
        return Err(TerramechError::WheelStationary { rim_speed });
    }
    let raw = (rim_speed - forward_speed) / rim_speed;
    let value = raw.clamp(0.0, 1.0);
    Ok(SlipRatio { value, clamped: value != raw })
}

/// Contact entry angle for a wheel sunk `sinkage` meters into the soil:
/// `acos(1 - z/r)`.
pub fn entry_angle(sinkage: f64, radius: f64) -> Result<f64, TerramechError> {
    if !sinkage.is_finite() {
        return Err(TerramechError::NonFinite { name: "sinkage" });
    }
    if !radius.is_finite() || radius <= 0.0 {
        return Err(TerramechError::NonPositive { name: "wheel radius", value: radius });
    }
    if sinkage < 0.0 {
        return Err(TerramechError::NegativeSinkage { sinkage });
    }
    if sinkage >= radius {
        return Err(TerramechError::WheelBuried { sinkage, radius });
    }
    Ok(math::acos(1.0 - sinkage / radius))
}

/// Inverse of [`entry_angle`]: the sinkage putting the contact entry at
/// `theta`.
pub fn sinkage_for_entry(theta: f64, radius: f64) -> f64 {
    radius * (1.0 - math::cos(theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn slip_matches_hand_case() {
        // 2 rad/s at 0.145 m rolling radius, advancing 0.232 m/s.
        let s = slip_ratio(2.0, 0.232, 0.145).unwrap();
        assert_relative_eq!(s.value, 0.2, epsilon = 1e-12);
        assert!(!s.clamped);
    }

    #[test]
    fn slip_edge_cases() {
        let full = slip_ratio(2.0, 0.0, 0.145).unwrap();
        assert_eq!(full.value, 1.0);
        assert!(!full.clamped);

        let towed = slip_ratio(2.0, 0.5, 0.145).unwrap();
        assert_eq!(towed.value, 0.0);
        assert!(towed.clamped);

        let reversing_soil = slip_ratio(2.0, -0.1, 0.145).unwrap();
        assert_eq!(reversing_soil.value, 1.0);
        assert!(reversing_soil.clamped);

        assert!(matches!(
            slip_ratio(1e-4, 0.0, 0.145),
            Err(TerramechError::WheelStationary { .. })
        ));
        assert!(matches!(
            slip_ratio(-2.0, 0.0, 0.145),
            Err(TerramechError::WheelStationary { .. })
        ));
    }

    #[test]
    fn entry_angle_hand_case() {
        let theta = entry_angle(0.006252891522415163, 0.14).unwrap();
        assert_relative_eq!(theta, 0.3, epsilon = 1e-12);
        assert_eq!(entry_angle(0.0, 0.14).unwrap(), 0.0);
    }

    #[test]
    fn entry_angle_domain() {
        assert!(matches!(
            entry_angle(-0.001, 0.14),
            Err(TerramechError::NegativeSinkage { .. })
        ));
        assert!(matches!(
            entry_angle(0.14, 0.14),
            Err(TerramechError::WheelBuried { .. })
        ));
        assert!(matches!(
            entry_angle(0.01, 0.0),
            Err(TerramechError::NonPositive { .. })
        ));
    }
}
