//! Continuous piecewise-linear self-maps of `[0,1]` with exact rational breakpoints.
//!
//! A [`PlMap`] is stored in canonical form: abscissae strictly increasing from 0
//! to 1 and no three consecutive breakpoints collinear. Two maps are equal as
//! functions iff they are structurally equal.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::Sign;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_set::{Interval, IntervalSet};
use crate::rational::{format_rational, ratio, sign_of, Rational, UnitRational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlMap {
    points: Vec<(UnitRational, UnitRational)>,
}

/// One linear piece `[x0, x1] -> [y0, y1]`.
#[derive(Clone, Copy, Debug)]
pub struct Piece<'a> {
    pub x0: &'a UnitRational,
    pub y0: &'a UnitRational,
    pub x1: &'a UnitRational,
    pub y1: &'a UnitRational,
}

/// Value at `t` of the line through `(s0, v0)` and `(s1, v1)`, `s0 != s1`:
/// `(v0 (s1 - t) + v1 (t - s0)) / (s1 - s0)` over a common denominator,
/// reduced once.
fn interpolate(
    t: &Rational,
    s0: &UnitRational,
    s1: &UnitRational,
    v0: &UnitRational,
    v1: &UnitRational,
) -> UnitRational {
    let (p, q) = (t.numer(), t.denom());
    let (a0, b0) = (s0.numer(), s0.denom());
    let (a1, b1) = (s1.numer(), s1.denom());
    let (c0, d0) = (v0.numer(), v0.denom());
    let (c1, d1) = (v1.numer(), v1.denom());
    let left = c0 * d1 * b0 * (a1 * q - p * b1);
    let right = c1 * d0 * b1 * (p * b0 - a0 * q);
    let den = d0 * d1 * q * (a1 * b0 - a0 * b1);
    UnitRational::new_unchecked(Rational::new(left + right, den))
}

impl Piece<'_> {
    pub fn slope(&self) -> Rational {
        (self.y1.as_rational() - self.y0.as_rational())
            / (self.x1.as_rational() - self.x0.as_rational())
    }

    pub fn is_flat(&self) -> bool {
        self.y0 == self.y1
    }

    /// Value at `x`, which must lie in `[x0, x1]`.
    pub fn at(&self, x: &Rational) -> UnitRational {
        if x == self.x0.as_rational() {
            return self.y0.clone();
        }
        if x == self.x1.as_rational() {
            return self.y1.clone();
        }
        if self.is_flat() {
            return self.y0.clone();
        }
        interpolate(x, self.x0, self.x1, self.y0, self.y1)
    }

    /// The abscissa where this (non-flat) piece takes the value `y`.
    pub fn solve(&self, y: &Rational) -> UnitRational {
        debug_assert!(!self.is_flat());
        if y == self.y0.as_rational() {
            return self.x0.clone();
        }
        if y == self.y1.as_rational() {
            return self.x1.clone();
        }
        interpolate(y, self.y0, self.y1, self.x0, self.x1)
    }

    /// `(min, max)` of the values on the piece.
    pub fn range(&self) -> (&UnitRational, &UnitRational) {
        if self.y0 <= self.y1 {
            (self.y0, self.y1)
        } else {
            (self.y1, self.y0)
        }
    }
}

fn collinear(
    a: &(UnitRational, UnitRational),
    b: &(UnitRational, UnitRational),
    c: &(UnitRational, UnitRational),
) -> bool {
    (b.1.as_rational() - a.1.as_rational()) * (c.0.as_rational() - b.0.as_rational())
        == (c.1.as_rational() - b.1.as_rational()) * (b.0.as_rational() - a.0.as_rational())
}

/// Drops interior breakpoints that sit on the segment joining their neighbours.
fn decollinearize(points: Vec<(UnitRational, UnitRational)>) -> Vec<(UnitRational, UnitRational)> {
    let mut out: Vec<(UnitRational, UnitRational)> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
            out.pop();
        }
        out.push(p);
    }
    out
}

impl PlMap {
    /// Validates and canonicalizes a list of breakpoints.
    pub fn new(points: Vec<(UnitRational, UnitRational)>) -> Result<Self> {
        let (first, last) = match (points.first(), points.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::DomainNotCovered("no breakpoints".into())),
        };
        if !first.0.is_zero() || !last.0.is_one() {
            return Err(Error::DomainNotCovered(format!(
                "first x = {}, last x = {}",
                first.0, last.0
            )));
        }
        if let Some(index) = points.windows(2).position(|w| w[0].0 >= w[1].0) {
            return Err(Error::NonMonotone { index: index + 1 });
        }
        Ok(PlMap {
            points: decollinearize(points),
        })
    }

    /// Like [`PlMap::new`] but from unrestricted rationals, reporting range violations.
    pub fn from_rationals(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let mut unit = Vec::with_capacity(points.len());
        for (x, y) in points {
            let x = UnitRational::new(x).map_err(|e| match e {
                Error::OutOfUnitInterval(v) => Error::DomainNotCovered(format!("x = {v}")),
                other => other,
            })?;
            let y = UnitRational::new(y).map_err(|e| match e {
                Error::OutOfUnitInterval(v) => Error::OrdinateOutOfRange(v),
                other => other,
            })?;
            unit.push((x, y));
        }
        PlMap::new(unit)
    }

    /// Convenience constructor from small integer pairs `((p, q), (r, s))`.
    #[allow(clippy::type_complexity)]
    pub fn from_ratios(points: &[((i64, i64), (i64, i64))]) -> Result<Self> {
        PlMap::from_rationals(
            points
                .iter()
                .map(|&((p, q), (r, s))| (ratio(p, q), ratio(r, s)))
                .collect(),
        )
    }

    pub fn identity() -> Self {
        PlMap {
            points: vec![
                (UnitRational::zero(), UnitRational::zero()),
                (UnitRational::one(), UnitRational::one()),
            ],
        }
    }

    /// The constant map `x -> c`.
    pub fn constant(c: UnitRational) -> Self {
        PlMap {
            points: vec![(UnitRational::zero(), c.clone()), (UnitRational::one(), c)],
        }
    }

    /// The full tent `[(0,0), (1/2,1), (1,0)]`.
    pub fn tent() -> Self {
        PlMap::from_ratios(&[((0, 1), (0, 1)), ((1, 2), (1, 1)), ((1, 1), (0, 1))])
            .expect("valid tent")
    }

    pub fn breakpoints(&self) -> &[(UnitRational, UnitRational)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn pieces(&self) -> impl ExactSizeIterator<Item = Piece<'_>> + '_ {
        self.points.windows(2).map(|w| Piece {
            x0: &w[0].0,
            y0: &w[0].1,
            x1: &w[1].0,
            y1: &w[1].1,
        })
    }

    fn piece(&self, i: usize) -> Piece<'_> {
        Piece {
            x0: &self.points[i].0,
            y0: &self.points[i].1,
            x1: &self.points[i + 1].0,
            y1: &self.points[i + 1].1,
        }
    }

    /// Index of the piece containing `x` (the left one at an interior breakpoint).
    fn piece_index(&self, x: &Rational) -> usize {
        let idx = self.points.partition_point(|p| p.0.as_rational() < x);
        idx.saturating_sub(1).min(self.points.len() - 2)
    }

    pub fn eval(&self, x: &UnitRational) -> UnitRational {
        self.eval_rational(x.as_rational())
    }

    fn eval_rational(&self, x: &Rational) -> UnitRational {
        self.piece(self.piece_index(x)).at(x)
    }

    /// Largest denominator bit length among all breakpoint coordinates.
    pub fn max_denominator_bits(&self) -> u64 {
        self.points
            .iter()
            .flat_map(|(x, y)| [x.denom().bits(), y.denom().bits()])
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PlMap[")?;
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        f.write_str("]")
    }
}

/// Exact composition `outer ∘ inner`.
///
/// The breakpoints of the result are those of `inner` plus every point where
/// `inner` crosses an abscissa of `outer` inside one of its linear pieces.
pub fn compose(outer: &PlMap, inner: &PlMap) -> PlMap {
    let abscissae: Vec<&Rational> = outer.points.iter().map(|p| p.0.as_rational()).collect();
    let mut points = Vec::with_capacity(inner.len() + outer.len());
    for piece in inner.pieces() {
        points.push((piece.x0.clone(), outer.eval(piece.y0)));
        if piece.is_flat() {
            continue;
        }
        let (lo, hi) = piece.range();
        let start = abscissae.partition_point(|b| *b <= lo.as_rational());
        let end = abscissae.partition_point(|b| *b < hi.as_rational());
        let crossings = start..end;
        let mut push = |k: usize| {
            points.push((piece.solve(abscissae[k]), outer.points[k].1.clone()));
        };
        if piece.y0 < piece.y1 {
            crossings.for_each(&mut push);
        } else {
            crossings.rev().for_each(&mut push);
        }
    }
    let (x_last, y_last) = inner.points.last().expect("at least two breakpoints");
    points.push((x_last.clone(), outer.eval(y_last)));
    PlMap {
        points: decollinearize(points),
    }
}

/// [`compose`] that fails when the canonical result exceeds `budget` breakpoints.
pub fn compose_within(outer: &PlMap, inner: &PlMap, budget: usize) -> Result<PlMap> {
    let m = compose(outer, inner);
    if m.len() > budget {
        return Err(Error::BudgetExceeded {
            count: m.len(),
            budget,
        });
    }
    Ok(m)
}

/// A sup-norm distance together with an abscissa where it is attained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    #[serde(with = "crate::rational::serde_rational")]
    pub value: Rational,
    pub witness: UnitRational,
}

/// Sorted union of the two breakpoint abscissa sets.
fn common_refinement<'a>(a: &'a PlMap, b: &'a PlMap) -> Vec<&'a UnitRational> {
    let mut xs: Vec<&UnitRational> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.points.get(i), b.points.get(j)) {
            (Some(p), Some(q)) => match p.0.cmp(&q.0) {
                Ordering::Less => {
                    i += 1;
                    &p.0
                }
                Ordering::Greater => {
                    j += 1;
                    &q.0
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    &p.0
                }
            },
            (Some(p), None) => {
                i += 1;
                &p.0
            }
            (None, Some(q)) => {
                j += 1;
                &q.0
            }
            (None, None) => unreachable!(),
        };
        xs.push(next);
    }
    xs
}

/// Exact `‖a − b‖∞`. The maximum is attained on the common refinement of the
/// two partitions; the witness is the smallest such abscissa.
pub fn sup_dist(a: &PlMap, b: &PlMap) -> Distance {
    let mut best: Option<Distance> = None;
    for x in common_refinement(a, b) {
        let d = (a.eval(x).as_rational() - b.eval(x).as_rational()).abs();
        if best.as_ref().is_none_or(|bd| d > bd.value) {
            best = Some(Distance {
                value: d,
                witness: x.clone(),
            });
        }
    }
    best.expect("refinement is never empty")
}

/// Exact `‖f∘g − g∘f‖∞` with witness; zero iff the maps commute.
pub fn commutator_defect(f: &PlMap, g: &PlMap) -> Distance {
    sup_dist(&compose(f, g), &compose(g, f))
}

/// The exact solution set of `m(x) = x`.
pub fn fixed_points(m: &PlMap) -> IntervalSet {
    let mut found = Vec::new();
    for p in m.pieces() {
        let d0 = p.y0.as_rational() - p.x0.as_rational();
        let d1 = p.y1.as_rational() - p.x1.as_rational();
        match (sign_of(&d0), sign_of(&d1)) {
            (Sign::NoSign, Sign::NoSign) => found.push(Interval::new(p.x0.clone(), p.x1.clone())),
            (Sign::NoSign, _) => found.push(Interval::point(p.x0.clone())),
            (_, Sign::NoSign) => found.push(Interval::point(p.x1.clone())),
            (s0, s1) if s0 != s1 => {
                let x0 = p.x0.as_rational();
                let x = x0 + &d0 * (p.x1.as_rational() - x0) / (&d0 - &d1);
                found.push(Interval::point(UnitRational::new_unchecked(x)));
            }
            _ => {}
        }
    }
    IntervalSet::from_intervals(found)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surjectivity {
    pub surjective: bool,
    pub range: IntervalSet,
}

/// The range `[min y, max y]` over breakpoints, and whether it is all of `[0,1]`.
pub fn is_surjective(m: &PlMap) -> Surjectivity {
    let lo = m.points.iter().map(|p| &p.1).min().expect("nonempty");
    let hi = m.points.iter().map(|p| &p.1).max().expect("nonempty");
    Surjectivity {
        surjective: lo.is_zero() && hi.is_one(),
        range: IntervalSet::interval(lo.clone(), hi.clone()),
    }
}

/// Exact image `m(S)`.
pub fn image(m: &PlMap, s: &IntervalSet) -> IntervalSet {
    let mut out = Vec::new();
    for iv in s {
        let first = m.piece_index(iv.lo.as_rational());
        for k in first..m.len() - 1 {
            let p = m.piece(k);
            if p.x0 > &iv.hi {
                break;
            }
            let Some(clip) = iv.intersect(&Interval::new(p.x0.clone(), p.x1.clone())) else {
                continue;
            };
            out.push(Interval::new(p.at(&clip.lo), p.at(&clip.hi)));
        }
    }
    IntervalSet::from_intervals(out)
}

/// Exact preimage `m⁻¹(S)`. Flat pieces valued in `S` contribute whole sub-intervals.
pub fn preimage(m: &PlMap, s: &IntervalSet) -> IntervalSet {
    let targets = s.intervals();
    let mut out = Vec::new();
    for p in m.pieces() {
        if p.is_flat() {
            if s.contains(p.y0) {
                out.push(Interval::new(p.x0.clone(), p.x1.clone()));
            }
            continue;
        }
        let (lo, hi) = p.range();
        let start = targets.partition_point(|iv| &iv.hi < lo);
        for iv in &targets[start..] {
            if &iv.lo > hi {
                break;
            }
            let a = (&iv.lo).max(lo);
            let b = (&iv.hi).min(hi);
            out.push(Interval::new(p.solve(a), p.solve(b)));
        }
    }
    IntervalSet::from_intervals(out)
}

/// Preimage of a single point, the hot path of backward enumeration.
pub fn point_preimage(m: &PlMap, y: &UnitRational) -> IntervalSet {
    let mut out = Vec::new();
    for p in m.pieces() {
        if p.is_flat() {
            if p.y0 == y {
                out.push(Interval::new(p.x0.clone(), p.x1.clone()));
            }
            continue;
        }
        let (lo, hi) = p.range();
        if lo <= y && y <= hi {
            out.push(Interval::point(p.solve(y)));
        }
    }
    IntervalSet::from_intervals(out)
}

/// Slope statistics of a map relative to an expansion bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeProfile {
    #[serde(with = "crate::rational::serde_rational")]
    pub bound: Rational,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub slopes: Vec<Rational>,
    /// Breakpoints where the slope changes sign or a neighbouring piece is flat.
    pub critical: Vec<UnitRational>,
    /// Minimum `|slope|` over non-flat pieces; `None` for a constant map.
    #[serde(with = "crate::rational::serde_opt_rational")]
    pub min_abs_slope: Option<Rational>,
    pub exceeds_bound: bool,
    /// All non-flat pieces share one `|slope|`. False for a constant map.
    pub constant_abs_slope: bool,
}

pub fn slope_profile(m: &PlMap, bound: &Rational) -> Result<SlopeProfile> {
    if !bound.is_positive() {
        return Err(Error::NonPositiveBound(format_rational(bound)));
    }
    let slopes: Vec<Rational> = m.pieces().map(|p| p.slope()).collect();
    let mut critical = Vec::new();
    for (i, (x, _)) in m.points.iter().enumerate() {
        let left = i.checked_sub(1).map(|k| sign_of(&slopes[k]));
        let right = slopes.get(i).map(sign_of);
        let is_critical = match (left, right) {
            (Some(l), Some(r)) => l != r || l == Sign::NoSign,
            (Some(s), None) | (None, Some(s)) => s == Sign::NoSign,
            (None, None) => false,
        };
        if is_critical {
            critical.push(x.clone());
        }
    }
    let expanding: Vec<Rational> = slopes
        .iter()
        .filter(|s| !s.is_zero())
        .map(|s| s.abs())
        .collect();
    let min_abs_slope = expanding.iter().min().cloned();
    let exceeds_bound = min_abs_slope.as_ref().is_some_and(|s| s > bound);
    let constant_abs_slope = !expanding.is_empty() && expanding.iter().all(|s| *s == expanding[0]);
    Ok(SlopeProfile {
        bound: bound.clone(),
        slopes,
        critical,
        min_abs_slope,
        exceeds_bound,
        constant_abs_slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(p: i64, q: i64) -> UnitRational {
        UnitRational::from_ratio(p, q)
    }

    fn halve() -> PlMap {
        PlMap::from_ratios(&[((0, 1), (0, 1)), ((1, 1), (1, 2))]).unwrap()
    }

    fn reflect() -> PlMap {
        PlMap::from_ratios(&[((0, 1), (1, 1)), ((1, 1), (0, 1))]).unwrap()
    }

    fn double_tent() -> PlMap {
        PlMap::from_ratios(&[
            ((0, 1), (0, 1)),
            ((1, 4), (1, 1)),
            ((1, 2), (0, 1)),
            ((3, 4), (1, 1)),
            ((1, 1), (0, 1)),
        ])
        .unwrap()
    }

    #[test]
    fn construction_canonicalizes() {
        let id = PlMap::from_ratios(&[((0, 1), (0, 1)), ((1, 1), (1, 1))]).unwrap();
        assert_eq!(id, PlMap::identity());
        assert_eq!(id.len(), 2);
        let id2 =
            PlMap::from_ratios(&[((0, 1), (0, 1)), ((1, 2), (1, 2)), ((1, 1), (1, 1))]).unwrap();
        assert_eq!(id2, PlMap::identity());
        assert_eq!(PlMap::tent().len(), 3);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            PlMap::from_ratios(&[((1, 4), (0, 1)), ((1, 1), (1, 1))]),
            Err(Error::DomainNotCovered(_))
        ));
        assert!(matches!(
            PlMap::from_ratios(&[((0, 1), (0, 1))]),
            Err(Error::DomainNotCovered(_))
        ));
        assert!(matches!(
            PlMap::new(vec![]),
            Err(Error::DomainNotCovered(_))
        ));
        assert_eq!(
            PlMap::from_ratios(&[
                ((0, 1), (0, 1)),
                ((1, 2), (0, 1)),
                ((1, 2), (1, 1)),
                ((1, 1), (1, 1))
            ]),
            Err(Error::NonMonotone { index: 2 })
        );
        assert!(matches!(
            PlMap::from_ratios(&[((0, 1), (0, 1)), ((1, 1), (3, 2))]),
            Err(Error::OrdinateOutOfRange(_))
        ));
    }

    #[test]
    fn eval_examples() {
        let t = PlMap::tent();
        assert_eq!(t.eval(&u(1, 2)), u(1, 1));
        assert_eq!(t.eval(&u(1, 3)), u(2, 3));
        assert_eq!(t.eval(&u(1, 1)), u(0, 1));
        assert_eq!(PlMap::identity().eval(&u(7, 13)), u(7, 13));
    }

    #[test]
    fn compose_examples() {
        let t = PlMap::tent();
        assert_eq!(compose(&PlMap::identity(), &t), t);
        assert_eq!(compose(&t, &PlMap::identity()), t);
        let tt = compose(&t, &t);
        assert_eq!(tt, double_tent());
        // Brute-force cross-check on the 1/64 grid.
        for k in 0..=64 {
            let x = u(k, 64);
            assert_eq!(tt.eval(&x), t.eval(&t.eval(&x)));
        }
    }

    #[test]
    fn compose_with_flat_pieces() {
        let step = PlMap::from_ratios(&[
            ((0, 1), (0, 1)),
            ((1, 3), (1, 2)),
            ((2, 3), (1, 2)),
            ((1, 1), (1, 1)),
        ])
        .unwrap();
        let m = compose(&PlMap::tent(), &step);
        for k in 0..=96 {
            let x = u(k, 96);
            assert_eq!(m.eval(&x), PlMap::tent().eval(&step.eval(&x)));
        }
        assert!(compose_within(&PlMap::tent(), &PlMap::tent(), 4).is_err());
        assert!(compose_within(&PlMap::tent(), &PlMap::tent(), 5).is_ok());
    }

    #[test]
    fn sup_dist_examples() {
        let t = PlMap::tent();
        assert_eq!(sup_dist(&t, &t).value, ratio(0, 1));
        let d = sup_dist(&t, &PlMap::identity());
        assert_eq!((d.value, d.witness), (ratio(1, 1), u(1, 1)));
        assert_eq!(sup_dist(&PlMap::identity(), &reflect()).value, ratio(1, 1));
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(fixed_points(&PlMap::identity()), IntervalSet::full());
        assert_eq!(
            fixed_points(&PlMap::tent()),
            IntervalSet::from_points([u(0, 1), u(2, 3)])
        );
        assert_eq!(
            fixed_points(&double_tent()),
            IntervalSet::from_points([u(0, 1), u(2, 5), u(2, 3), u(4, 5)])
        );
        assert_eq!(fixed_points(&reflect()), IntervalSet::point(u(1, 2)));
        assert_eq!(
            fixed_points(&PlMap::constant(u(1, 3))),
            IntervalSet::point(u(1, 3))
        );
    }

    #[test]
    fn fixed_points_with_identity_segment() {
        let m = PlMap::from_ratios(&[
            ((0, 1), (1, 4)),
            ((1, 4), (1, 4)),
            ((1, 2), (1, 2)),
            ((1, 1), (0, 1)),
        ])
        .unwrap();
        assert_eq!(
            fixed_points(&m),
            IntervalSet::from_intervals([Interval::new(u(1, 4), u(1, 2))])
        );
    }

    #[test]
    fn surjectivity_examples() {
        assert!(is_surjective(&PlMap::tent()).surjective);
        assert!(is_surjective(&PlMap::identity()).surjective);
        let h = is_surjective(&halve());
        assert!(!h.surjective);
        assert_eq!(h.range, IntervalSet::interval(u(0, 1), u(1, 2)));
    }

    #[test]
    fn image_examples() {
        let t = PlMap::tent();
        assert_eq!(
            image(&t, &IntervalSet::interval(u(0, 1), u(1, 2))),
            IntervalSet::full()
        );
        assert_eq!(
            image(&t, &IntervalSet::point(u(1, 4))),
            IntervalSet::point(u(1, 2))
        );
        let s = IntervalSet::from_intervals([
            Interval::new(u(1, 7), u(2, 7)),
            Interval::point(u(5, 6)),
        ]);
        assert_eq!(image(&PlMap::identity(), &s), s);
        assert_eq!(
            image(&t, &IntervalSet::point(u(1, 2))),
            IntervalSet::point(u(1, 1))
        );
        assert_eq!(image(&t, &IntervalSet::empty()), IntervalSet::empty());
    }

    #[test]
    fn preimage_examples() {
        let t = PlMap::tent();
        assert_eq!(
            preimage(&t, &IntervalSet::point(u(1, 2))),
            IntervalSet::from_points([u(1, 4), u(3, 4)])
        );
        assert_eq!(
            preimage(&t, &IntervalSet::point(u(2, 3))),
            IntervalSet::from_points([u(1, 3), u(2, 3)])
        );
        assert_eq!(
            preimage(&t, &IntervalSet::point(u(1, 1))),
            IntervalSet::point(u(1, 2))
        );
        let s = IntervalSet::from_intervals([
            Interval::new(u(1, 7), u(2, 7)),
            Interval::point(u(5, 6)),
        ]);
        assert_eq!(preimage(&PlMap::identity(), &s), s);
        assert_eq!(
            point_preimage(&t, &u(2, 3)),
            preimage(&t, &IntervalSet::point(u(2, 3)))
        );
    }

    #[test]
    fn preimage_of_flat_piece() {
        let m = PlMap::from_ratios(&[
            ((0, 1), (0, 1)),
            ((1, 3), (1, 2)),
            ((2, 3), (1, 2)),
            ((1, 1), (1, 1)),
        ])
        .unwrap();
        let expected = IntervalSet::interval(u(1, 3), u(2, 3));
        assert_eq!(preimage(&m, &IntervalSet::point(u(1, 2))), expected);
        assert_eq!(point_preimage(&m, &u(1, 2)), expected);
        assert_eq!(
            preimage(&m, &IntervalSet::point(u(1, 4))),
            IntervalSet::point(u(1, 6))
        );
    }

    #[test]
    fn defect_examples() {
        let t = PlMap::tent();
        assert!(commutator_defect(&t, &compose(&t, &t)).value.is_zero());
        let d = commutator_defect(&t, &halve());
        assert_eq!((d.value, d.witness), (ratio(1, 1), u(1, 1)));
        assert_eq!(commutator_defect(&t, &reflect()).value, ratio(1, 1));
    }

    #[test]
    fn slope_examples() {
        let t = PlMap::tent();
        let p = slope_profile(&t, &ratio(1, 1)).unwrap();
        assert_eq!(p.slopes, vec![ratio(2, 1), ratio(-2, 1)]);
        assert_eq!(p.min_abs_slope, Some(ratio(2, 1)));
        assert!(p.exceeds_bound && p.constant_abs_slope);
        assert_eq!(p.critical, vec![u(1, 2)]);
        assert!(!slope_profile(&t, &ratio(3, 1)).unwrap().exceeds_bound);

        let id = slope_profile(&PlMap::identity(), &ratio(1, 2)).unwrap();
        assert_eq!(id.min_abs_slope, Some(ratio(1, 1)));
        assert!(id.exceeds_bound && id.critical.is_empty());

        let flat = slope_profile(&PlMap::constant(u(1, 2)), &ratio(1, 1)).unwrap();
        assert_eq!(flat.min_abs_slope, None);
        assert!(!flat.exceeds_bound && !flat.constant_abs_slope);
        assert_eq!(flat.critical, vec![u(0, 1), u(1, 1)]);

        assert!(matches!(
            slope_profile(&t, &ratio(0, 1)),
            Err(Error::NonPositiveBound(_))
        ));
    }
}
