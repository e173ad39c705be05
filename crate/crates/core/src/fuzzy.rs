//! Trapezoidal membership functions and min aggregation.
//!
//! A [`FuzzySet`] is either the unconstrained set (membership identically 1)
//! or a trapezoid over a linear domain (distances) or a circular one
//! (angles in degrees). Crisp intervals are trapezoids with vertical ramps.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Angle;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("non-finite membership argument")]
    NonFinite,
    #[error("malformed fuzzy set: {0}")]
    Malformed(String),
    #[error("the unconstrained set has no unique maximizer")]
    NoUniqueMaximizer,
    #[error("min-combination of an empty list")]
    EmptyCombination,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Linear,
    Circular,
}

/// Four breakpoints `a ≤ b ≤ c ≤ d`: support `[a, d]`, core `[b, c]`.
///
/// Circular trapezoids store normalized angles read counterclockwise from
/// `a`; the arc from `a` to `d` must be shorter than a full turn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    domain: Domain,
}

fn ccw(from: f64, to: f64) -> f64 {
    let v = (to - from).rem_euclid(360.0);
    if v >= 360.0 {
        0.0
    } else {
        v
    }
}

impl Trapezoid {
    pub fn linear(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(FuzzyError::Malformed("breakpoints must be finite".into()));
        }
        if !(a <= b && b <= c && c <= d) {
            return Err(FuzzyError::Malformed(format!(
                "linear breakpoints must be ordered, got [{a}, {b}, {c}, {d}]"
            )));
        }
        Ok(Self {
            a,
            b,
            c,
            d,
            domain: Domain::Linear,
        })
    }

    /// Builds a circular trapezoid. Breakpoints may be given in any
    /// representative (e.g. `-20` for `340`); they are read counterclockwise.
    pub fn circular(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(FuzzyError::Malformed("breakpoints must be finite".into()));
        }
        // Authors usually write signed degrees; an ordered list whose span is
        // a full turn or more is rejected before wrapping hides it.
        if a <= b && b <= c && c <= d && d - a >= 360.0 {
            return Err(FuzzyError::Malformed(format!(
                "circular support [{a}, {d}] covers the full circle; use \"any\""
            )));
        }
        let [a, b, c, d] = [a, b, c, d].map(|v| Angle::wrap(v).degrees());
        let (ab, bc, cd) = (ccw(a, b), ccw(b, c), ccw(c, d));
        if ab + bc + cd >= 360.0 {
            return Err(FuzzyError::Malformed(format!(
                "circular breakpoints [{a}, {b}, {c}, {d}] do not run counterclockwise within one turn"
            )));
        }
        Ok(Self {
            a,
            b,
            c,
            d,
            domain: Domain::Circular,
        })
    }

    pub fn new(domain: Domain, [a, b, c, d]: [f64; 4]) -> Result<Self, FuzzyError> {
        match domain {
            Domain::Linear => Self::linear(a, b, c, d),
            Domain::Circular => Self::circular(a, b, c, d),
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn breakpoints(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Breakpoints unwrapped onto a monotone axis starting at `a`; for
    /// linear sets this is just the breakpoints.
    pub fn unwrapped(&self) -> [f64; 4] {
        match self.domain {
            Domain::Linear => self.breakpoints(),
            Domain::Circular => {
                let b = self.a + ccw(self.a, self.b);
                let c = b + ccw(self.b, self.c);
                let d = c + ccw(self.c, self.d);
                [self.a, b, c, d]
            }
        }
    }

    /// Membership of a finite value.
    pub(crate) fn degree(&self, x: f64) -> f64 {
        let [a, b, c, d] = self.unwrapped();
        let t = match self.domain {
            Domain::Linear => x,
            Domain::Circular => a + ccw(a, x),
        };
        if t < a || t > d {
            0.0
        } else if t >= b && t <= c {
            1.0
        } else if t < b {
            (t - a) / (b - a)
        } else {
            (d - t) / (d - c)
        }
    }

    /// Midpoint of the core.
    pub fn core_midpoint(&self) -> f64 {
        match self.domain {
            Domain::Linear => 0.5 * (self.b + self.c),
            Domain::Circular => Angle::wrap(self.b + 0.5 * ccw(self.b, self.c)).degrees(),
        }
    }

    /// Largest angular distance from the core midpoint to a support endpoint.
    pub fn support_half_width(&self) -> f64 {
        let [a, b, c, d] = self.unwrapped();
        let mid = 0.5 * (b + c);
        (mid - a).max(d - mid)
    }
}

/// A membership function: unconstrained, or trapezoidal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FuzzySetRepr", into = "FuzzySetRepr")]
pub enum FuzzySet {
    Any,
    Trapezoid(Trapezoid),
}

/// Interchange form: `"any"`, `{"linear": [a, b, c, d]}` or
/// `{"circular": [a, b, c, d]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum FuzzySetRepr {
    Any,
    Linear([f64; 4]),
    Circular([f64; 4]),
}

impl TryFrom<FuzzySetRepr> for FuzzySet {
    type Error = FuzzyError;
    fn try_from(r: FuzzySetRepr) -> Result<Self, FuzzyError> {
        Ok(match r {
            FuzzySetRepr::Any => FuzzySet::Any,
            FuzzySetRepr::Linear(p) => FuzzySet::Trapezoid(Trapezoid::new(Domain::Linear, p)?),
            FuzzySetRepr::Circular(p) => FuzzySet::Trapezoid(Trapezoid::new(Domain::Circular, p)?),
        })
    }
}

impl From<FuzzySet> for FuzzySetRepr {
    fn from(s: FuzzySet) -> Self {
        match s {
            FuzzySet::Any => FuzzySetRepr::Any,
            FuzzySet::Trapezoid(t) => match t.domain {
                Domain::Linear => FuzzySetRepr::Linear(t.breakpoints()),
                Domain::Circular => FuzzySetRepr::Circular(t.breakpoints()),
            },
        }
    }
}

impl FuzzySet {
    pub fn linear(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        Trapezoid::linear(a, b, c, d).map(FuzzySet::Trapezoid)
    }

    pub fn circular(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        Trapezoid::circular(a, b, c, d).map(FuzzySet::Trapezoid)
    }

    /// Crisp interval `[lo, hi]` on a linear domain.
    pub fn crisp(lo: f64, hi: f64) -> Result<Self, FuzzyError> {
        Self::linear(lo, lo, hi, hi)
    }

    pub fn is_any(&self) -> bool {
        matches!(self, FuzzySet::Any)
    }

    pub fn trapezoid(&self) -> Option<&Trapezoid> {
        match self {
            FuzzySet::Any => None,
            FuzzySet::Trapezoid(t) => Some(t),
        }
    }

    /// `None` for the unconstrained set, which fits any domain.
    pub fn domain(&self) -> Option<Domain> {
        self.trapezoid().map(Trapezoid::domain)
    }

    pub fn membership(&self, x: f64) -> Result<f64, FuzzyError> {
        if !x.is_finite() {
            return Err(FuzzyError::NonFinite);
        }
        Ok(self.degree(x))
    }

    /// Membership of a value the caller knows to be finite.
    pub(crate) fn degree(&self, x: f64) -> f64 {
        match self {
            FuzzySet::Any => 1.0,
            FuzzySet::Trapezoid(t) => t.degree(x),
        }
    }

    pub fn core_midpoint(&self) -> Result<f64, FuzzyError> {
        self.trapezoid()
            .map(Trapezoid::core_midpoint)
            .ok_or(FuzzyError::NoUniqueMaximizer)
    }

    /// Upper end of the support on a linear domain; `None` when unbounded.
    pub fn support_max(&self) -> Option<f64> {
        self.trapezoid().map(|t| t.unwrapped()[3])
    }
}

/// Min t-norm over a non-empty list of degrees.
pub fn combine_min(degrees: &[f64]) -> Result<f64, FuzzyError> {
    degrees
        .iter()
        .copied()
        .reduce(f64::min)
        .ok_or(FuzzyError::EmptyCombination)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_membership() {
        let t = FuzzySet::linear(2.0, 4.0, 6.0, 8.0).unwrap();
        assert_eq!(t.membership(5.0).unwrap(), 1.0);
        assert_eq!(t.membership(3.0).unwrap(), 0.5);
        assert_eq!(t.membership(9.0).unwrap(), 0.0);
        assert_eq!(t.membership(2.0).unwrap(), 0.0);
        assert_eq!(t.membership(8.0).unwrap(), 0.0);
        assert_eq!(t.membership(7.5).unwrap(), 0.25);
        assert_eq!(t.membership(f64::NAN), Err(FuzzyError::NonFinite));
    }

    #[test]
    fn crisp_interval() {
        let t = FuzzySet::crisp(0.0, 6.0).unwrap();
        assert_eq!(t.membership(6.0).unwrap(), 1.0);
        assert_eq!(t.membership(0.0).unwrap(), 1.0);
        assert_eq!(t.membership(6.01).unwrap(), 0.0);
        assert_eq!(t.membership(-0.01).unwrap(), 0.0);
    }

    #[test]
    fn circular_membership() {
        let t = FuzzySet::circular(330.0, 350.0, 10.0, 30.0).unwrap();
        assert_eq!(t.membership(0.0).unwrap(), 1.0);
        assert_eq!(t.membership(20.0).unwrap(), 0.5);
        assert_eq!(t.membership(180.0).unwrap(), 0.0);
        assert_eq!(t.membership(340.0).unwrap(), 0.5);
        assert_eq!(t.membership(-20.0).unwrap(), 0.5);
        let signed = FuzzySet::circular(-30.0, -10.0, 10.0, 30.0).unwrap();
        assert_eq!(signed, t);
    }

    #[test]
    fn core_midpoints() {
        assert_eq!(FuzzySet::linear(2.0, 4.0, 6.0, 8.0).unwrap().core_midpoint(), Ok(5.0));
        let wrapped = FuzzySet::circular(330.0, 350.0, 10.0, 30.0).unwrap();
        assert_eq!(wrapped.core_midpoint(), Ok(0.0));
        assert_eq!(FuzzySet::crisp(6.0, 6.0).unwrap().core_midpoint(), Ok(6.0));
        assert_eq!(FuzzySet::Any.core_midpoint(), Err(FuzzyError::NoUniqueMaximizer));
    }

    #[test]
    fn rejects_malformed_sets() {
        assert!(FuzzySet::linear(3.0, 2.0, 4.0, 5.0).is_err());
        assert!(FuzzySet::linear(0.0, 1.0, 2.0, f64::INFINITY).is_err());
        assert!(FuzzySet::circular(0.0, 90.0, 180.0, 360.0).is_err());
        assert!(FuzzySet::circular(0.0, 200.0, 100.0, 300.0).is_err());
        assert!(FuzzySet::circular(-170.0, -100.0, 100.0, 170.0).is_ok());
    }

    #[test]
    fn half_width() {
        let t = Trapezoid::circular(-30.0, -10.0, 10.0, 40.0).unwrap();
        assert!((t.support_half_width() - 40.0).abs() < 1e-12);
    }

    #[test]
    fn combines_with_min() {
        assert_eq!(combine_min(&[1.0, 0.8, 0.9]), Ok(0.8));
        assert_eq!(combine_min(&[1.0, 1.0]), Ok(1.0));
        assert_eq!(combine_min(&[0.7, 0.0]), Ok(0.0));
        assert_eq!(combine_min(&[]), Err(FuzzyError::EmptyCombination));
    }

    #[test]
    fn serializes_as_tagged_breakpoints() {
        let s: FuzzySet = serde_json::from_str(r#"{"circular": [-20, -10, 10, 20]}"#).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"circular":[340.0,350.0,10.0,20.0]}"#);
        let any: FuzzySet = serde_json::from_str(r#""any""#).unwrap();
        assert!(any.is_any());
        assert!(serde_json::from_str::<FuzzySet>(r#"{"linear": [3, 2, 1, 0]}"#).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn linear_set() -> impl Strategy<Value = Trapezoid> {
            prop::array::uniform4(-50.0..50.0f64).prop_map(|mut p| {
                p.sort_by(f64::total_cmp);
                Trapezoid::linear(p[0], p[1], p[2], p[3]).unwrap()
            })
        }

        fn circular_set() -> impl Strategy<Value = Trapezoid> {
            (0.0..360.0f64, prop::array::uniform3(0.0..100.0f64))
                .prop_map(|(a, [x, y, z])| Trapezoid::circular(a, a + x, a + x + y, a + x + y + z).unwrap())
        }

        proptest! {
            #[test]
            fn membership_in_unit_interval(t in linear_set(), x in -100.0..100.0f64) {
                let m = t.degree(x);
                prop_assert!((0.0..=1.0).contains(&m));
                let [a, b, c, d] = t.breakpoints();
                if x >= b && x <= c { prop_assert_eq!(m, 1.0); }
                if x < a || x > d { prop_assert_eq!(m, 0.0); }
            }

            #[test]
            fn circular_membership_is_periodic(t in circular_set(), x in -720.0..720.0f64, k in -5i32..5) {
                let m0 = t.degree(x);
                let m1 = t.degree(x + 360.0 * k as f64);
                prop_assert!((0.0..=1.0).contains(&m0));
                prop_assert!((m0 - m1).abs() < 1e-9, "{} vs {}", m0, m1);
            }

            #[test]
            fn min_is_order_free_and_monotone(v in prop::collection::vec(0.0..=1.0f64, 1..10), extra in 0.0..=1.0f64) {
                let m = combine_min(&v).unwrap();
                let mut rev = v.clone();
                rev.reverse();
                prop_assert_eq!(m, combine_min(&rev).unwrap());
                let mut doubled = v.clone();
                doubled.extend_from_slice(&v);
                prop_assert_eq!(m, combine_min(&doubled).unwrap());
                let mut more = v.clone();
                more.push(extra);
                prop_assert!(combine_min(&more).unwrap() <= m);
            }
        }
    }
}
