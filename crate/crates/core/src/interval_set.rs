//! Finite unions of closed rational intervals in `[0,1]`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{Rational, UnitRational};

/// A closed interval `[lo, hi]`; `lo == hi` encodes a single point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: UnitRational,
    pub hi: UnitRational,
}

impl Interval {
    pub fn new(lo: UnitRational, hi: UnitRational) -> Self {
        if lo <= hi {
            Interval { lo, hi }
        } else {
            Interval { lo: hi, hi: lo }
        }
    }

    pub fn point(x: UnitRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.as_rational() <= x && x <= self.hi.as_rational()
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo);
        let hi = (&self.hi).min(&other.hi);
        (lo <= hi).then(|| Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        })
    }

    /// Distance between the closest points of the two intervals, with those points.
    pub fn distance(&self, other: &Interval) -> (Rational, UnitRational, UnitRational) {
        if self.hi < other.lo {
            (
                other.lo.as_rational() - self.hi.as_rational(),
                self.hi.clone(),
                other.lo.clone(),
            )
        } else if other.hi < self.lo {
            (
                self.lo.as_rational() - other.hi.as_rational(),
                self.lo.clone(),
                other.hi.clone(),
            )
        } else {
            let x = (&self.lo).max(&other.lo).clone();
            (Rational::from_integer(0.into()), x.clone(), x)
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Sorted, pairwise disjoint, non-touching closed intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn full() -> Self {
        IntervalSet {
            intervals: vec![Interval::new(UnitRational::zero(), UnitRational::one())],
        }
    }

    pub fn point(x: UnitRational) -> Self {
        IntervalSet {
            intervals: vec![Interval::point(x)],
        }
    }

    pub fn interval(lo: UnitRational, hi: UnitRational) -> Self {
        IntervalSet {
            intervals: vec![Interval::new(lo, hi)],
        }
    }

    pub fn from_points<I: IntoIterator<Item = UnitRational>>(points: I) -> Self {
        Self::from_intervals(points.into_iter().map(Interval::point))
    }

    /// Sorts and merges overlapping or touching intervals into canonical form.
    pub fn from_intervals<I: IntoIterator<Item = Interval>>(intervals: I) -> Self {
        let mut raw: Vec<Interval> = intervals.into_iter().collect();
        raw.sort_unstable_by(|a, b| a.lo.cmp(&b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        IntervalSet { intervals: merged }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.intervals.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Number of connected components.
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn min(&self) -> Option<&UnitRational> {
        self.intervals.first().map(|iv| &iv.lo)
    }

    pub fn max(&self) -> Option<&UnitRational> {
        self.intervals.last().map(|iv| &iv.hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.hi.as_rational() < x);
        self.intervals.get(idx).is_some_and(|iv| iv.contains(x))
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a, b) = (&self.intervals[i], &other.intervals[j]);
            if let Some(iv) = a.intersect(b) {
                out.push(iv);
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Pieces of two canonical sets cannot touch each other.
        IntervalSet { intervals: out }
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        Self::from_intervals(self.intervals.iter().chain(&other.intervals).cloned())
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.intersection(other) == *self
    }

    pub fn is_disjoint(&self, other: &IntervalSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Smallest interval containing the set.
    pub fn hull(&self) -> Option<Interval> {
        Some(Interval::new(self.min()?.clone(), self.max()?.clone()))
    }

    /// Largest denominator bit length among all endpoints.
    pub fn max_denominator_bits(&self) -> u64 {
        self.intervals
            .iter()
            .flat_map(|iv| [iv.lo.denom().bits(), iv.hi.denom().bits()])
            .max()
            .unwrap_or(0)
    }
}

impl<'a> IntoIterator for &'a IntervalSet {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.intervals.iter()
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{iv}")?;
        }
        f.write_str("}")
    }
}

/// Minimum distance between two nonempty sets, with a closest pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub distance: Rational,
    pub witness: (UnitRational, UnitRational),
}

/// Exact `min |a - b|` over `a` in `a_set`, `b` in `b_set`. Zero iff the sets meet.
pub fn separation(a_set: &IntervalSet, b_set: &IntervalSet) -> Result<Separation> {
    if a_set.is_empty() || b_set.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut best: Option<Separation> = None;
    for a in a_set {
        for b in b_set {
            let (distance, wa, wb) = a.distance(b);
            if best.as_ref().is_none_or(|s| distance < s.distance) {
                best = Some(Separation {
                    distance,
                    witness: (wa, wb),
                });
            }
        }
    }
    Ok(best.expect("both sets nonempty"))
}

// Serialized as a list of `["lo", "hi"]` pairs.
impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.intervals.iter().map(|iv| [&iv.lo, &iv.hi]))
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[UnitRational; 2]>::deserialize(d)?;
        let set = IntervalSet::from_intervals(
            pairs
                .iter()
                .map(|[lo, hi]| Interval::new(lo.clone(), hi.clone())),
        );
        if set.len() != pairs.len() {
            return Err(serde::de::Error::custom("interval set is not canonical"));
        }
        Ok(set)
    }
}
