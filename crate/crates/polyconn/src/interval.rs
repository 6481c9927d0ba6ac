//! Interval arithmetic with simulated outward rounding.
//!
//! Every arithmetic operation is computed in the default round-to-nearest
//! mode and then widened by one ulp on each side, which makes the result a
//! guaranteed enclosure of the exact real operation (a correctly rounded
//! result differs from the exact one by strictly less than one ulp, in
//! either direction). This costs up to two ulps of slack per operation and
//! buys soundness without touching the FPU rounding mode.
//!
//! The type is `Copy` and endpoint-closed: `[lo, hi]` with `lo <= hi`.
//! Division is only defined for divisors that exclude zero (the one place
//! the solver divides — by the positive weight `U` — satisfies this by
//! construction).

use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Closed floating-point interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

#[inline]
fn pad_down(v: f64) -> f64 {
    if v.is_finite() {
        v.next_down()
    } else {
        v
    }
}

#[inline]
fn pad_up(v: f64) -> f64 {
    if v.is_finite() {
        v.next_up()
    } else {
        v
    }
}

impl Interval {
    /// Interval with the given endpoints (must satisfy `lo <= hi`).
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "invalid interval [{}, {}]", lo, hi);
        Interval { lo, hi }
    }

    /// Degenerate interval holding exactly `v`.
    pub fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn zero() -> Self {
        Interval::point(0.0)
    }

    pub fn one() -> Self {
        Interval::point(1.0)
    }

    /// Tight enclosure of an exact rational: round to nearest, then nudge
    /// the endpoints outward until an exact comparison (via the lossless
    /// float-to-rational conversion) confirms the enclosure.
    pub fn from_rational(r: &BigRational) -> Self {
        let approx = r.to_f64().unwrap_or(f64::INFINITY);
        let mut lo = if approx.is_finite() { approx } else { f64::MAX };
        let mut hi = lo;
        while BigRational::from_float(lo).map_or(false, |v| v > *r) {
            lo = lo.next_down();
        }
        while BigRational::from_float(hi).map_or(false, |v| v < *r) {
            hi = hi.next_up();
        }
        if !BigRational::from_float(lo).map_or(false, |v| v <= *r) {
            lo = f64::NEG_INFINITY;
        }
        if !BigRational::from_float(hi).map_or(false, |v| v >= *r) {
            hi = f64::INFINITY;
        }
        Interval { lo, hi }
    }

    pub fn width(&self) -> f64 {
        pad_up(self.hi - self.lo).max(0.0)
    }

    /// Midpoint, clamped into the interval.
    pub fn mid(&self) -> f64 {
        let m = 0.5 * (self.lo + self.hi);
        if m.is_finite() {
            m.clamp(self.lo, self.hi)
        } else {
            // Endpoint overflow; fall back to a safe representative.
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    /// Upper bound on the distance from [`Interval::mid`] to either endpoint.
    pub fn rad(&self) -> f64 {
        let m = self.mid();
        pad_up((self.hi - m).max(m - self.lo)).max(0.0)
    }

    /// Largest absolute value over the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value over the interval (0 if it contains 0).
    pub fn mig(&self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    /// `other` lies within `self` (not necessarily strictly).
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `other` lies in the interior of `self`.
    pub fn contains_interval_strictly(&self, other: &Interval) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: pad_down(self.lo + other.lo),
            hi: pad_up(self.hi + other.hi),
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: pad_down(self.lo - other.hi),
            hi: pad_up(self.hi - other.lo),
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let candidates = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in candidates {
            // 0 * inf would be NaN; our operands stay finite in practice,
            // but treat NaN conservatively if it ever appears.
            if c.is_nan() {
                return Interval {
                    lo: f64::NEG_INFINITY,
                    hi: f64::INFINITY,
                };
            }
            lo = lo.min(c);
            hi = hi.max(c);
        }
        Interval {
            lo: pad_down(lo),
            hi: pad_up(hi),
        }
    }

    pub fn scale(&self, k: f64) -> Interval {
        self.mul(&Interval::point(k))
    }

    /// Division; `None` when the divisor contains zero.
    pub fn checked_div(&self, other: &Interval) -> Option<Interval> {
        if other.contains_zero() {
            return None;
        }
        let candidates = [
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in candidates {
            lo = lo.min(c);
            hi = hi.max(c);
        }
        Some(Interval {
            lo: pad_down(lo),
            hi: pad_up(hi),
        })
    }

    /// Tight square: the result never dips below zero.
    pub fn square(&self) -> Interval {
        let m = self.mag();
        let hi = pad_up(m * m);
        let lo = if self.contains_zero() {
            0.0
        } else {
            let g = self.mig();
            pad_down(g * g).max(0.0)
        };
        Interval { lo, hi }
    }

    /// Integer power by parity-aware binary exponentiation; sound for all
    /// exponents, tight through zero for even ones.
    pub fn powi(&self, n: u32) -> Interval {
        match n {
            0 => Interval::one(),
            1 => *self,
            _ if n % 2 == 0 => self.square().pow_nonneg(n / 2),
            _ => self.mul(&self.square().pow_nonneg((n - 1) / 2)),
        }
    }

    /// Power of an interval already known nonnegative (monotone case).
    fn pow_nonneg(&self, n: u32) -> Interval {
        debug_assert!(self.lo >= 0.0);
        let mut acc = Interval::one();
        let mut base = *self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        // mul can pad the floor below zero; restore the invariant.
        Interval {
            lo: acc.lo.max(0.0),
            hi: acc.hi,
        }
    }

    /// Widen by `max(rel * width, abs)` on each side (used for epsilon
    /// inflation before a contraction test).
    pub fn inflate(&self, rel: f64, abs: f64) -> Interval {
        let delta = (rel * self.width()).max(abs);
        Interval {
            lo: pad_down(self.lo - delta),
            hi: pad_up(self.hi + delta),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

/// Axis-aligned box: one interval per coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct Box_ {
    pub coords: Vec<Interval>,
}

impl Box_ {
    pub fn new(coords: Vec<Interval>) -> Self {
        Box_ { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Cube `[c - r, c + r]^n` around a point.
    pub fn around(center: &[f64], r: f64) -> Self {
        Box_ {
            coords: center
                .iter()
                .map(|&c| Interval::new(pad_down(c - r), pad_up(c + r)))
                .collect(),
        }
    }

    pub fn mid(&self) -> Vec<f64> {
        self.coords.iter().map(|i| i.mid()).collect()
    }

    /// Largest coordinate width.
    pub fn max_width(&self) -> f64 {
        self.coords.iter().map(|i| i.width()).fold(0.0, f64::max)
    }

    /// Index of the widest coordinate.
    pub fn widest_axis(&self) -> usize {
        let mut best = 0;
        let mut w = -1.0;
        for (i, c) in self.coords.iter().enumerate() {
            if c.width() > w {
                w = c.width();
                best = i;
            }
        }
        best
    }

    /// Product of coordinate widths (0-width boxes have 0 volume).
    pub fn volume(&self) -> f64 {
        self.coords.iter().map(|i| i.width()).product()
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        self.dim() == x.len()
            && self
                .coords
                .iter()
                .zip(x.iter())
                .all(|(i, &v)| i.contains(v))
    }

    pub fn contains_box(&self, other: &Box_) -> bool {
        self.dim() == other.dim()
            && self
                .coords
                .iter()
                .zip(other.coords.iter())
                .all(|(a, b)| a.contains_interval(b))
    }

    pub fn contains_box_strictly(&self, other: &Box_) -> bool {
        self.dim() == other.dim()
            && self
                .coords
                .iter()
                .zip(other.coords.iter())
                .all(|(a, b)| a.contains_interval_strictly(b))
    }

    pub fn intersects(&self, other: &Box_) -> bool {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .all(|(a, b)| a.intersects(b))
    }

    pub fn intersect(&self, other: &Box_) -> Option<Box_> {
        let mut coords = Vec::with_capacity(self.dim());
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            coords.push(a.intersect(b)?);
        }
        Some(Box_ { coords })
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &Box_) -> Box_ {
        Box_ {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a.hull(b))
                .collect(),
        }
    }

    /// Split along `axis` at the given fraction of the width (0 < t < 1).
    pub fn split_at(&self, axis: usize, t: f64) -> (Box_, Box_) {
        let c = &self.coords[axis];
        let cut = c.lo + t * (c.hi - c.lo);
        // Guard against degenerate cuts from rounding.
        let cut = cut.clamp(c.lo, c.hi);
        let mut left = self.clone();
        let mut right = self.clone();
        left.coords[axis] = Interval::new(c.lo, cut);
        right.coords[axis] = Interval::new(cut, c.hi);
        (left, right)
    }

    pub fn inflate(&self, rel: f64, abs: f64) -> Box_ {
        Box_ {
            coords: self.coords.iter().map(|c| c.inflate(rel, abs)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(x: f64) -> BigRational {
        BigRational::from_float(x).expect("finite")
    }

    #[test]
    fn from_rational_encloses() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let iv = Interval::from_rational(&third);
        assert!(rat(iv.lo) <= third && third <= rat(iv.hi));
        assert!(iv.width() <= 1e-15);

        // Exactly representable values enclose as points.
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let iv = Interval::from_rational(&half);
        assert_eq!(iv.lo, 0.5);
        assert_eq!(iv.hi, 0.5);
    }

    #[test]
    fn square_is_tight_through_zero() {
        let iv = Interval::new(-2.0, 3.0).square();
        assert!(iv.lo == 0.0);
        assert!(iv.hi >= 9.0 && iv.hi <= 9.0 + 1e-13);

        let iv = Interval::new(2.0, 3.0).square();
        assert!(iv.lo <= 4.0 && iv.lo >= 4.0 - 1e-13);
        assert!(iv.hi >= 9.0);
    }

    #[test]
    fn powi_parity() {
        let iv = Interval::new(-2.0, 1.0);
        let even = iv.powi(4);
        assert!(even.lo == 0.0 && even.hi >= 16.0);
        let odd = iv.powi(3);
        assert!(odd.lo <= -8.0 && odd.hi >= 1.0);
        assert_eq!(iv.powi(0), Interval::one());
    }

    #[test]
    fn division_rejects_zero_divisor() {
        let a = Interval::new(1.0, 2.0);
        assert!(a.checked_div(&Interval::new(-1.0, 1.0)).is_none());
        let q = a.checked_div(&Interval::new(2.0, 4.0)).unwrap();
        assert!(q.lo <= 0.25 && q.hi >= 1.0);
    }

    #[test]
    fn box_split_covers() {
        let b = Box_::around(&[0.0, 1.0], 1.0);
        let (l, r) = b.split_at(0, 0.5 + 1.0 / 64.0);
        assert!(l.coords[0].hi == r.coords[0].lo);
        assert!(l.coords[0].lo == b.coords[0].lo);
        assert!(r.coords[0].hi == b.coords[0].hi);
        assert_eq!(l.coords[1], b.coords[1]);
    }

    #[test]
    fn inflate_grows() {
        let b = Interval::new(1.0, 2.0).inflate(0.05, 0.0);
        assert!(b.lo < 1.0 && b.hi > 2.0);
        assert!(b.lo > 0.9 && b.hi < 2.1);
    }

    proptest! {
        // For sampled point values inside sampled intervals, the exact
        // rational result of each operation lies inside the interval
        // result.
        #[test]
        fn arithmetic_encloses_exact(
            a in -1e6f64..1e6, wa in 0.0f64..10.0,
            b in -1e6f64..1e6, wb in 0.0f64..10.0,
            ta in 0.0f64..=1.0, tb in 0.0f64..=1.0,
        ) {
            let ia = Interval::new(a, a + wa);
            let ib = Interval::new(b, b + wb);
            // Points inside (clamped to stay inside after rounding).
            let pa = (a + ta * wa).clamp(ia.lo, ia.hi);
            let pb = (b + tb * wb).clamp(ib.lo, ib.hi);
            let (ra, rb) = (rat(pa), rat(pb));

            let sum = ia.add(&ib);
            let exact = &ra + &rb;
            prop_assert!(rat(sum.lo) <= exact && exact <= rat(sum.hi));

            let diff = ia.sub(&ib);
            let exact = &ra - &rb;
            prop_assert!(rat(diff.lo) <= exact && exact <= rat(diff.hi));

            let prod = ia.mul(&ib);
            let exact = &ra * &rb;
            prop_assert!(rat(prod.lo) <= exact && exact <= rat(prod.hi));

            let sq = ia.square();
            let exact = &ra * &ra;
            prop_assert!(rat(sq.lo) <= exact && exact <= rat(sq.hi));

            let pw = ia.powi(3);
            let exact = &ra * &ra * &ra;
            prop_assert!(rat(pw.lo) <= exact && exact <= rat(pw.hi));
        }

        #[test]
        fn division_encloses_exact(
            a in -1e6f64..1e6, wa in 0.0f64..10.0,
            b in 0.125f64..1e6, wb in 0.0f64..10.0,
            ta in 0.0f64..=1.0, tb in 0.0f64..=1.0,
        ) {
            let ia = Interval::new(a, a + wa);
            let ib = Interval::new(b, b + wb); // strictly positive
            let pa = (a + ta * wa).clamp(ia.lo, ia.hi);
            let pb = (b + tb * wb).clamp(ib.lo, ib.hi);
            let q = ia.checked_div(&ib).unwrap();
            let exact = rat(pa) / rat(pb);
            prop_assert!(rat(q.lo) <= exact && exact <= rat(q.hi));
        }

        #[test]
        fn mid_rad_cover(a in -1e6f64..1e6, w in 0.0f64..100.0) {
            let iv = Interval::new(a, a + w);
            let m = iv.mid();
            prop_assert!(iv.contains(m));
            prop_assert!(m - iv.rad() <= iv.lo);
            prop_assert!(m + iv.rad() >= iv.hi);
        }
    }
}
