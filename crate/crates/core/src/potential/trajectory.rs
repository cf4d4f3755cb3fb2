//! Continuation of quadratic-differential trajectories: the level lines of
//! `Im xi_lambda`, along which `-Q_lambda dz^2 > 0`.

use rug::Float;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::float_to_decimal;
use crate::potential::scalar::{xi, xi_prime, z_star};
use crate::precision::{BranchMode, MPComplex, PrecisionContext};

/// Where a trajectory was launched from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// the endpoint `+1` or `-1`
    Endpoint(i8),
    /// the double zero `z* = 2i/lambda`
    DoubleZero,
    /// an ordinary point
    Regular,
}

/// Why the continuation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// came within a step of a pole (`+-1`)
    ReachedPole,
    /// left the bounding box `|z| <= 4`
    LeftBox,
    /// returned to the starting point
    ClosedLoop,
    /// crossed the real axis (crossing abscissa recorded)
    ReachedRealAxis,
    /// iteration cap hit without another stop condition
    MaxSteps,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::ReachedPole => "REACHED_POLE",
            Termination::LeftBox => "LEFT_BOX",
            Termination::ClosedLoop => "CLOSED_LOOP",
            Termination::ReachedRealAxis => "REACHED_REAL_AXIS",
            Termination::MaxSteps => "MAX_STEPS",
        }
    }
}

/// A traced `Im xi = const` polyline.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub points: Vec<MPComplex>,
    pub origin: Origin,
    pub termination: Termination,
    /// the conserved level `Im xi`
    pub level: Float,
    /// real-axis crossing abscissae encountered (at most one; we stop there)
    pub crossings: Vec<Float>,
}

/// The four admissible launch angles at the double zero: `+-pi/4`, `+-3pi/4`.
///
/// `xi''(z*)` is purely imaginary with positive imaginary part for every
/// `lambda > 0`, so the local level lines `Im(xi'' (z-z*)^2/2) = 0` make
/// these angles independent of `lambda`.
pub fn zstar_launch_angles(ctx: &PrecisionContext) -> [Float; 4] {
    let q = ctx.pi() / 4u32;
    [
        q.clone(),
        -q.clone(),
        q.clone() * 3u32,
        -(q * 3u32),
    ]
}

/// Trace the trajectory through `z0` in the launch direction `angle`
/// (radians, measured from the positive real axis).
///
/// If `z0` is the double zero the seed is displaced one step along the
/// nearest admissible angle. The trace stops at the first real-axis
/// crossing, at a pole, outside `|z| = 4`, or on closing a loop.
pub fn trace_trajectory(
    z0: &MPComplex,
    lambda: &Float,
    angle: f64,
    step: f64,
    ctx: &PrecisionContext,
) -> Result<Trajectory> {
    if !(step.is_finite() && step > 0.0 && step < 0.5) {
        return Err(Error::DomainError(format!("bad trace step {step}")));
    }
    let p = ctx.prec();
    let tol = ctx.tol();
    let hstep = ctx.float(step);

    let zs = if lambda.is_zero() {
        None
    } else {
        Some(z_star(lambda, ctx)?)
    };
    let at_double_zero = zs
        .as_ref()
        .map(|zsv| z0.sub(zsv).abs() < tol)
        .unwrap_or(false);

    let (origin, level, mut z, mut prev_dir) = if at_double_zero {
        // snap to the closest admissible angle and displace off the zero of xi'
        let snapped = zstar_launch_angles(ctx)
            .into_iter()
            .min_by(|a, b| {
                let da = wrap_angle(a.to_f64() - angle).abs();
                let db = wrap_angle(b.to_f64() - angle).abs();
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        let (sin, cos) = snapped.sin_cos(Float::new(p));
        let dir = MPComplex::new(cos, sin);
        let level = xi(z0, lambda, BranchMode::Principal, ctx)?.im;
        let seed = z0.add(&dir.scale(&hstep));
        (Origin::DoubleZero, level, seed, dir)
    } else {
        for e in [1f64, -1f64] {
            if z0.sub(&MPComplex::from_f64(p, e, 0.0)).abs() < tol {
                return Err(Error::PoleAt(format!(
                    "cannot launch a trajectory from the pole z = {e}"
                )));
            }
        }
        let dir = MPComplex::from_f64(p, angle.cos(), angle.sin());
        let level = xi(z0, lambda, BranchMode::Principal, ctx)?.im;
        (Origin::Regular, level, z0.clone(), dir)
    };

    let mut points = vec![if at_double_zero { z0.clone() } else { z.clone() }];
    if at_double_zero {
        correct_to_level(&mut z, lambda, &level, step, ctx)?;
        points.push(z.clone());
    }

    let mut crossings = Vec::new();
    let max_steps = (30.0 / step) as usize + 1000;
    let mut termination = Termination::MaxSteps;
    for it in 0..max_steps {
        let k1 = traj_tangent(&z, lambda, &prev_dir, ctx)?;
        let half = hstep.clone() / 2u32;
        let k2 = traj_tangent(&z.add(&k1.scale(&half)), lambda, &k1, ctx)?;
        let k3 = traj_tangent(&z.add(&k2.scale(&half)), lambda, &k2, ctx)?;
        let k4 = traj_tangent(&z.add(&k3.scale(&hstep)), lambda, &k3, ctx)?;
        let incr = k1
            .add(&k2.scale(&ctx.float(2.0)))
            .add(&k3.scale(&ctx.float(2.0)))
            .add(&k4)
            .scale(&(hstep.clone() / 6u32));
        let mut z_next = z.add(&incr);

        // first real-axis crossing terminates the trace; detected on the raw
        // predictor because Im xi jumps across the cut [-1,1] and the
        // corrector must not run on the far side
        if z.im.is_sign_positive() != z_next.im.is_sign_positive() {
            let y0 = z.im.to_f64();
            let y1 = z_next.im.to_f64();
            let t = y0 / (y0 - y1);
            let x = z.re.to_f64() + t * (z_next.re.to_f64() - z.re.to_f64());
            crossings.push(ctx.float(x));
            points.push(z_next.clone());
            termination = Termination::ReachedRealAxis;
            break;
        }
        correct_to_level(&mut z_next, lambda, &level, step, ctx)?;

        prev_dir = unit(&z_next.sub(&z));
        z = z_next;
        points.push(z.clone());

        let near_pole = [1f64, -1f64].iter().any(|e| {
            z.sub(&MPComplex::from_f64(p, *e, 0.0)).abs().to_f64() < step
        });
        if near_pole {
            termination = Termination::ReachedPole;
            break;
        }
        if z.abs().to_f64() > 4.0 {
            termination = Termination::LeftBox;
            break;
        }
        if it > 10 && z.sub(&points[0]).abs().to_f64() < step {
            termination = Termination::ClosedLoop;
            break;
        }
    }

    Ok(Trajectory {
        points,
        origin,
        termination,
        level,
        crossings,
    })
}

/// Unit tangent `conj(xi')/|xi'|`, sign-aligned with `ref_dir`.
fn traj_tangent(
    z: &MPComplex,
    lambda: &Float,
    ref_dir: &MPComplex,
    ctx: &PrecisionContext,
) -> Result<MPComplex> {
    let d = xi_prime(z, lambda, BranchMode::Principal, ctx)?;
    let t = unit(&d.conj());
    let align = Float::with_val(t.prec(), &t.re * &ref_dir.re)
        + Float::with_val(t.prec(), &t.im * &ref_dir.im);
    Ok(if align.is_sign_negative() { -t } else { t })
}

/// Newton iteration for `Im xi = level` along the normal `i conj(xi')/|xi'|`.
fn correct_to_level(
    z: &mut MPComplex,
    lambda: &Float,
    level: &Float,
    step: f64,
    ctx: &PrecisionContext,
) -> Result<()> {
    let tol = ctx.tol();
    for _ in 0..60 {
        let f = xi(z, lambda, BranchMode::Principal, ctx)?.im - level;
        if f.clone().abs() < tol {
            return Ok(());
        }
        let d = xi_prime(z, lambda, BranchMode::Principal, ctx)?;
        let mag = d.abs();
        // d(Im xi)/dn = |xi'| along n = i conj(xi')/|xi'|
        let delta = -f / &mag;
        if delta.clone().abs().to_f64() > step {
            return Err(Error::NonConvergence(
                "trajectory corrector step exceeded the trace step".into(),
            ));
        }
        *z = z.add(&d.conj().mul_i().unscale(&mag).scale(&delta));
    }
    Err(Error::NonConvergence(
        "trajectory corrector did not converge in 60 iterations".into(),
    ))
}

fn unit(z: &MPComplex) -> MPComplex {
    z.unscale(&z.abs())
}

fn wrap_angle(a: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let mut x = a % two_pi;
    if x > std::f64::consts::PI {
        x -= two_pi;
    } else if x < -std::f64::consts::PI {
        x += two_pi;
    }
    x
}

impl Trajectory {
    pub fn to_json(&self, ctx: &PrecisionContext) -> Value {
        let d = ctx.roundtrip_digits();
        json!({
            "origin": match self.origin {
                Origin::Endpoint(e) => format!("ENDPOINT_{e:+}"),
                Origin::DoubleZero => "DOUBLE_ZERO".to_string(),
                Origin::Regular => "REGULAR".to_string(),
            },
            "termination": self.termination.as_str(),
            "level": float_to_decimal(&self.level, d),
            "points": crate::io::complex_seq_to_json(&self.points, ctx),
            "crossings": self.crossings.iter().map(|x| float_to_decimal(x, d)).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self, ctx: &PrecisionContext) -> String {
        let d = ctx.roundtrip_digits();
        let mut out = String::from("s,re,im\n");
        let p = ctx.prec();
        let mut s = Float::new(p);
        for (i, z) in self.points.iter().enumerate() {
            if i > 0 {
                s += z.sub(&self.points[i - 1]).abs();
            }
            out.push_str(&format!(
                "{},{},{}\n",
                float_to_decimal(&s, d),
                float_to_decimal(&z.re, d),
                float_to_decimal(&z.im, d),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::scalar::h_of_lambda;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    #[test]
    fn launch_angles_are_quarter_pi() {
        let c = ctx();
        let angles = zstar_launch_angles(&c);
        let q = std::f64::consts::FRAC_PI_4;
        let got: Vec<f64> = angles.iter().map(|a| a.to_f64()).collect();
        for expect in [q, -q, 3.0 * q, -3.0 * q] {
            assert!(got.iter().any(|g| (g - expect).abs() < 1e-30));
        }
    }

    #[test]
    fn level_is_conserved_along_trace() {
        let c = ctx();
        let lam = c.float(0.8);
        let z0 = MPComplex::from_f64(c.prec(), 1.6, 0.9);
        let tr = trace_trajectory(&z0, &lam, 0.9, 5e-3, &c).unwrap();
        assert!(tr.points.len() > 10);
        // the final point is the raw predictor when the trace ends on the
        // real axis; every corrected point must hold the level
        let corrected = &tr.points[..tr.points.len() - 1];
        let mut max_dev = 0f64;
        for z in corrected.iter().filter(|z| !z.im.is_zero()) {
            let v = xi(z, &lam, BranchMode::Principal, &c).unwrap().im;
            let dev = (v - &tr.level).abs().to_f64();
            max_dev = max_dev.max(dev);
        }
        assert!(max_dev < 1e-25, "max level deviation {max_dev:e}");
    }

    #[test]
    fn subcritical_crossing_is_outside_the_interval() {
        // lambda = 0.8 < lambda0: trajectory from z* crosses at x = cosh(h/2) > 1
        let c = ctx();
        let lam = c.float(0.8);
        let zs = z_star(&lam, &c).unwrap();
        let tr = trace_trajectory(&zs, &lam, -std::f64::consts::FRAC_PI_4, 5e-3, &c).unwrap();
        assert_eq!(tr.origin, Origin::DoubleZero);
        assert_eq!(tr.termination, Termination::ReachedRealAxis);
        let x = tr.crossings[0].to_f64();
        assert!(x > 1.0, "crossing {x}");
        let oracle = (h_of_lambda(&lam, &c).unwrap().to_f64() / 2.0).cosh();
        assert!((x - oracle).abs() < 1e-3, "crossing {x} vs cosh(h/2) {oracle}");
    }

    #[test]
    fn supercritical_crossing_is_inside_the_interval() {
        // lambda = 1.5 > lambda0: crossing at x = sqrt(1 - h^2/lambda^2) in (0,1)
        let c = ctx();
        let lam = c.float(1.5);
        let zs = z_star(&lam, &c).unwrap();
        let tr = trace_trajectory(&zs, &lam, -std::f64::consts::FRAC_PI_4, 5e-3, &c).unwrap();
        assert_eq!(tr.termination, Termination::ReachedRealAxis);
        let x = tr.crossings[0].to_f64();
        assert!(x > 0.0 && x < 1.0, "crossing {x}");
        let h = h_of_lambda(&lam, &c).unwrap().to_f64();
        let oracle = (1.0 - (h / 1.5).powi(2)).sqrt();
        assert!((x - oracle).abs() < 1e-3, "crossing {x} vs oracle {oracle}");
    }

    #[test]
    fn rejects_pole_launch() {
        let c = ctx();
        let one = MPComplex::one(c.prec());
        assert!(matches!(
            trace_trajectory(&one, &c.float(0.5), 1.0, 1e-2, &c),
            Err(Error::PoleAt(_))
        ));
    }
}
