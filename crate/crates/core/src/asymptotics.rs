//! Semiclassical approximations for 3nj symbols with a few small entries.
//!
//! Each evaluator returns the value together with its three factors so a
//! disagreement with the exact engine can be localized: the signed
//! amplitude, the argument of the cosine and the d-matrix factors.

use crate::error::{AsymError, GeometryError};
use crate::geometry::{angle_bundle, build_tetrahedron, triangle_theta, EdgeSet, TetraKind, Twist};
use crate::halfint::HalfInt;
use crate::scalar::Real;
use crate::wigner_d::{little_d, DSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct Components<T> {
    /// Sign times amplitude.
    pub prefactor: T,
    /// `None` for formulas without an oscillating factor.
    pub cosine_argument: Option<T>,
    pub d_factors: Vec<T>,
}

/// An asymptotic value inside the classically allowed region.
///
/// Points outside it produce [`GeometryError::NotClassicallyAllowed`] instead
/// of a value.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymResult<T> {
    pub value: T,
    /// Tetrahedron volume, absent for formulas that use none.
    pub volume: Option<T>,
    pub components: Components<T>,
}

impl<T: Real> AsymResult<T> {
    fn assemble(volume: Option<T>, components: Components<T>) -> Self {
        let osc = components.cosine_argument.map_or(T::one(), T::cos);
        let d = components.d_factors.iter().fold(T::one(), |acc, &x| acc * x);
        AsymResult {
            value: components.prefactor * osc * d,
            volume,
            components,
        }
    }
}

/// `(-1)^n` given `2n`.
fn phase<T: Real>(twice_n: i64) -> Result<T, AsymError> {
    if twice_n.rem_euclid(2) != 0 {
        return Err(AsymError::NonIntegerPhase(twice_n));
    }
    Ok(if (twice_n / 2).rem_euclid(2) == 0 { T::one() } else { -T::one() })
}

fn tw(j: HalfInt) -> i64 {
    i64::from(j.twice())
}

fn half<T: Real>(twice: i64) -> T {
    T::of(twice as f64 * 0.5)
}

/// `2j + 1` as a float.
fn dim<T: Real>(j: HalfInt) -> T {
    T::of(f64::from(j.dim()))
}

fn d_spec<T: Real>(s: HalfInt, nu_twice: i64, mu_twice: i64) -> Result<DSpec<T>, AsymError> {
    let spec = DSpec::new(s, nu_twice, mu_twice, T::zero());
    spec.validate()?;
    Ok(spec)
}

fn d_at<T: Real>(spec: DSpec<T>, theta: T) -> Result<T, AsymError> {
    little_d(DSpec { theta, ..spec })
}

fn twelve_pi_v<T: Real>(v: T) -> T {
    T::of(12.0) * T::PI() * v
}

/// 9j with one small entry, layout `{j1 j2 j12; s j4 j34; j13 j24 j5}`.
pub fn asym_9j_one_small<T: Real>(e: [HalfInt; 9]) -> Result<AsymResult<T>, AsymError> {
    let [j1, j2, j12, s, j4, j34, j13, j24, j5] = e;
    let mu = tw(j13) - tw(j1);
    let nu = tw(j34) - tw(j4);
    let spec = d_spec::<T>(s, nu, mu)?;
    let sign = phase::<T>(tw(j1) + tw(j2) + tw(j4) + tw(j5) + 2 * tw(s) + nu)?;

    let edges = EdgeSet::nine_j([j1, j2, j4, j5, j12, j24]);
    let config = build_tetrahedron(&edges)?;
    let b = angle_bundle(&config, TetraKind::NineJ)?;
    let Twist::NineJ { phi1, phi4, theta } = b.twist else {
        unreachable!()
    };
    let v = b.volume;
    let prefactor = sign / (dim::<T>(j13) * dim(j34) * twelve_pi_v(v)).sqrt();
    let arg = b.regge_action(&edges) + T::FRAC_PI_4() - s.value::<T>() * T::PI()
        + half::<T>(mu) * phi1
        + half::<T>(nu) * phi4;
    let d = d_at(spec, theta)?;
    Ok(AsymResult::assemble(
        Some(v),
        Components {
            prefactor,
            cosine_argument: Some(arg),
            d_factors: vec![d],
        },
    ))
}

/// 9j with two small entries, layout `{j1 s2 j12; s3 j4 j34; j13 j24 j5}`.
///
/// Needs only the triangle `(J1, J4, J5)`; there is no volume factor.
pub fn asym_9j_two_small<T: Real>(e: [HalfInt; 9]) -> Result<AsymResult<T>, AsymError> {
    let [j1, s2, j12, s3, j4, j34, j13, j24, j5] = e;
    let a = d_spec::<T>(s2, tw(j12) - tw(j1), tw(j24) - tw(j4))?;
    let b = d_spec::<T>(s3, tw(j13) - tw(j1), tw(j34) - tw(j4))?;
    let sign = phase::<T>(2 * (tw(j4) + tw(j5)) + tw(s2) + tw(s3) + tw(j12) + tw(j13))?;
    let theta = triangle_theta(j1.length::<T>(), j4.length(), j5.length())?;
    let prefactor = sign / (dim::<T>(j13) * dim(j24) * dim(j12) * dim(j34)).sqrt();
    Ok(AsymResult::assemble(
        None,
        Components {
            prefactor,
            cosine_argument: None,
            d_factors: vec![d_at(a, theta)?, d_at(b, theta)?],
        },
    ))
}

/// 12j with two small entries, layout `{s1 j2 j12 j125; j3 j4 j34 j135; j13 j24 s5 j6}`.
pub fn asym_12j_two_small<T: Real>(e: [HalfInt; 12]) -> Result<AsymResult<T>, AsymError> {
    let [s1, j2, j12, j125, j3, j4, j34, j135, j13, j24, s5, j6] = e;
    let mu1 = tw(j12) - tw(j2);
    let nu1 = tw(j13) - tw(j3);
    let mu5 = tw(j125) - tw(j12);
    let nu5 = tw(j135) - tw(j13);
    let d1 = d_spec::<T>(s1, nu1, mu1)?;
    let d5 = d_spec::<T>(s5, nu5, mu5)?;
    let sign = phase::<T>(tw(j24) + tw(j34) + tw(j125) + tw(j135) + tw(s1) + tw(s5) + nu1 + nu5)?;

    let edges = EdgeSet::twelve_j([j2, j4, j3, j6, j24, j34]);
    let config = build_tetrahedron(&edges)?;
    let b = angle_bundle(&config, TetraKind::TwelveJ)?;
    let Twist::TwelveJ { phi2, phi3, theta } = b.twist else {
        unreachable!()
    };
    let v = b.volume;
    let prefactor =
        sign / (dim::<T>(j12) * dim(j125) * dim(j13) * dim(j135) * twelve_pi_v(v)).sqrt();
    let arg = b.regge_action(&edges) + T::FRAC_PI_4() - (s1.value::<T>() + s5.value()) * T::PI()
        + half::<T>(mu1 + mu5) * phi2
        + half::<T>(nu1 + nu5) * phi3;
    Ok(AsymResult::assemble(
        Some(v),
        Components {
            prefactor,
            cosine_argument: Some(arg),
            d_factors: vec![d_at(d1, theta)?, d_at(d5, theta)?],
        },
    ))
}

/// 15j with three small entries, layout
/// `{j1 j2 j12 j125 j1256; s3 j4 j34 j135 j1356; j13 j24 s5 s6 j7}`.
pub fn asym_15j_three_small<T: Real>(e: [HalfInt; 15]) -> Result<AsymResult<T>, AsymError> {
    let [j1, j2, j12, j125, j1256, s3, j4, j34, j135, j1356, j13, j24, s5, s6, j7] = e;
    let mu3 = tw(j34) - tw(j4);
    let nu3 = tw(j13) - tw(j1);
    let mu5 = tw(j125) - tw(j12);
    let nu5 = tw(j135) - tw(j13);
    let mu6 = tw(j1256) - tw(j125);
    let nu6 = tw(j1356) - tw(j135);
    let d3 = d_spec::<T>(s3, nu3, mu3)?;
    let d5 = d_spec::<T>(s5, nu5, mu5)?;
    let d6 = d_spec::<T>(s6, nu6, mu6)?;
    let sign = phase::<T>(tw(j1) + tw(j2) + tw(j4) + tw(j7) + 2 * tw(s3) + nu3 + mu5 + mu6)?;

    let edges = EdgeSet::fifteen_j([j1, j2, j4, j7, j12, j24]);
    let config = build_tetrahedron(&edges)?;
    let b = angle_bundle(&config, TetraKind::FifteenJ)?;
    let Twist::FifteenJ {
        phi1p,
        phi4p,
        theta1,
        theta2,
        phi1_int,
        phi12_int,
    } = b.twist
    else {
        unreachable!()
    };
    let v = b.volume;
    let dims = dim::<T>(j34) * dim(j13) * dim(j135) * dim(j1356) * dim(j125) * dim(j1256);
    let prefactor = sign / (dims * twelve_pi_v(v)).sqrt();
    let arg = b.regge_action(&edges) + T::FRAC_PI_4() - s3.value::<T>() * T::PI()
        + half::<T>(mu3) * phi4p
        + half::<T>(nu3) * phi1p
        - half::<T>(mu5 + mu6) * phi12_int
        - half::<T>(nu5 + nu6) * phi1_int;
    Ok(AsymResult::assemble(
        Some(v),
        Components {
            prefactor,
            cosine_argument: Some(arg),
            d_factors: vec![d_at(d3, theta1)?, d_at(d5, theta2)?, d_at(d6, theta2)?],
        },
    ))
}

/// Ponzano-Regge approximation of `{j1 j2 j3; j4 j5 j6}`.
pub fn ponzano_regge_6j<T: Real>(e: [HalfInt; 6]) -> Result<AsymResult<T>, AsymError> {
    let edges = EdgeSet::six_j(e);
    let config = build_tetrahedron(&edges)?;
    let b = angle_bundle(&config, TetraKind::SixJ)?;
    let v = b.volume;
    Ok(AsymResult::assemble(
        Some(v),
        Components {
            prefactor: T::one() / twelve_pi_v(v).sqrt(),
            cosine_argument: Some(b.regge_action(&edges) + T::FRAC_PI_4()),
            d_factors: Vec::new(),
        },
    ))
}

/// True when `err` means "outside the classically allowed region".
pub fn is_forbidden(err: &AsymError) -> bool {
    matches!(
        err,
        AsymError::Geometry(GeometryError::NotClassicallyAllowed { .. } | GeometryError::NotATriangle(..))
    )
}
