//! Exact univariate and bivariate polynomial gcds and elimination.
//!
//! Three consumers:
//!
//! * `poly::squarefree_check` — joint gcd of a polynomial with its partials;
//! * the bivariate degeneracy probe — for `n = 2`, the critical system
//!   `{Q1, Q2}` has a positive-dimensional complex zero set iff
//!   `gcd(Q1, Q2)` is nonconstant, which this module decides exactly;
//! * search-region bounds — eliminating one variable from `{Q1, Q2}` by a
//!   pseudo-remainder sequence yields univariate polynomials whose real
//!   roots bound the coordinates of every common zero.
//!
//! Everything runs over `BigInt` coefficients (denominators are cleared on
//! entry; scaling by nonzero rationals changes neither zero sets nor gcd
//! degrees). Remainder sequences use the subresultant scaling of Brown and
//! Traub: each pseudo-remainder is divided by a predictable exact divisor,
//! which keeps coefficient growth single-exponential without any gcd
//! computations inside the loop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::MultiPoly;

// ---------------------------------------------------------------------------
// Univariate polynomials over BigInt: Vec<BigInt>, little-endian, trimmed.
// ---------------------------------------------------------------------------

pub type ZPoly = Vec<BigInt>;

fn z_trim(p: &mut ZPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn z_deg(p: &ZPoly) -> isize {
    p.len() as isize - 1
}

fn z_is_zero(p: &ZPoly) -> bool {
    p.is_empty()
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if z_is_zero(a) || z_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    z_trim(&mut out);
    out
}

fn z_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    z_trim(&mut out);
    out
}

fn z_scale(a: &ZPoly, k: &BigInt) -> ZPoly {
    if k.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * k).collect()
}

/// Exact division `a / b`; panics if the division is not exact
/// (callers only divide by known divisors).
fn z_divexact(a: &ZPoly, b: &ZPoly) -> ZPoly {
    assert!(!z_is_zero(b), "division by zero polynomial");
    if z_is_zero(a) {
        return Vec::new();
    }
    let da = z_deg(a) as usize;
    let db = z_deg(b) as usize;
    assert!(da >= db, "non-exact division (degree)");
    let lcb = &b[db];
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let coef = &rem[db + k];
        if coef.is_zero() {
            continue;
        }
        let (q, r) = coef.div_rem(lcb);
        assert!(r.is_zero(), "non-exact division (leading)");
        for (j, cb) in b.iter().enumerate() {
            let delta = &q * cb;
            rem[j + k] -= delta;
        }
        quot[k] = q;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact division (remainder)");
    z_trim(&mut quot);
    quot
}

fn z_content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn z_primitive(p: &ZPoly) -> ZPoly {
    if z_is_zero(p) {
        return Vec::new();
    }
    let mut c = z_content(p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    p.iter().map(|v| v / &c).collect()
}

/// In-place pseudo-remainder step sequence: returns `prem(a, b)` up to the
/// standard `lc(b)^e` scaling accumulated lazily (each round multiplies the
/// running remainder by `lc(b)` exactly once, so the result equals the
/// classical pseudo-remainder).
fn z_prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = z_deg(b);
    assert!(db >= 0, "prem by zero");
    let lcb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut e = z_deg(a) - db + 1;
    while !z_is_zero(&r) && z_deg(&r) >= db {
        let lcr = r.last().unwrap().clone();
        let k = (z_deg(&r) - db) as usize;
        let mut shifted = vec![BigInt::zero(); k];
        shifted.extend(z_scale(b, &lcr));
        r = z_sub(&z_scale(&r, &lcb), &shifted);
        e -= 1;
    }
    // Match the formal definition lc(b)^(da-db+1) * a = q*b + r.
    let mut pow = BigInt::one();
    for _ in 0..e.max(0) {
        pow *= &lcb;
    }
    z_scale(&r, &pow)
}

/// Subresultant PRS gcd of two integer polynomials (full gcd including
/// integer content, leading coefficient normalized positive).
pub fn z_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if z_is_zero(a) {
        return z_abs_lead(b.clone());
    }
    if z_is_zero(b) {
        return z_abs_lead(a.clone());
    }
    let cont_gcd = z_content(a).gcd(&z_content(b));
    let (mut f, mut g) = (z_primitive(a), z_primitive(b));
    if z_deg(&f) < z_deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    let mut h = BigInt::one();
    let mut gg = BigInt::one();
    loop {
        let delta = (z_deg(&f) - z_deg(&g)) as u32;
        let r = z_prem(&f, &g);
        if z_is_zero(&r) {
            break;
        }
        if z_deg(&r) == 0 {
            // Constant remainder: primitive gcd is 1.
            g = vec![BigInt::one()];
            break;
        }
        let mut divisor = gg.clone();
        for _ in 0..delta {
            divisor *= &h;
        }
        f = g;
        g = r.iter().map(|c| c / &divisor).collect::<Vec<_>>();
        z_trim(&mut g);
        gg = f.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let mut num = BigInt::one();
            for _ in 0..delta {
                num *= &gg;
            }
            let mut den = BigInt::one();
            for _ in 0..delta.saturating_sub(1) {
                den *= &h;
            }
            &num / &den
        };
    }
    let prim = z_primitive(&g);
    z_abs_lead(z_scale(&prim, &cont_gcd))
}

fn z_abs_lead(p: ZPoly) -> ZPoly {
    if p.last().map_or(false, |c| c.is_negative()) {
        p.iter().map(|c| -c).collect()
    } else {
        p
    }
}

/// Fujiwara-style bound on the absolute value of all complex (hence all
/// real) roots: every root `t` of `p = sum a_i x^i` of degree `d`
/// satisfies `|t| <= 2 max_{i<d} |a_i/a_d|^(1/(d-i))`.
///
/// The `1/(d-i)` exponent matters: remainder-sequence elimination can
/// inflate coefficient ratios to astronomical sizes (1e30 and beyond)
/// while the actual roots stay small, and a bound of the cruder
/// `1 + max |a_i/a_d|` shape becomes useless there.
///
/// Computed from integer bit lengths with upward slack so the returned
/// `f64` is itself sound: `|a_i| < 2^bits(a_i)` and
/// `|a_d| >= 2^(bits(a_d)-1)` give `|a_i/a_d| < 2^(bits(a_i)-bits(a_d)+1)`.
/// Degree-zero (or zero) polynomials have no roots; the bound is 0.
pub fn root_magnitude_bound(p: &ZPoly) -> f64 {
    if z_deg(p) <= 0 {
        return 0.0;
    }
    let d = p.len() - 1;
    let bits_lead = p[d].bits() as i64;
    let mut max_exp = f64::NEG_INFINITY;
    for (i, c) in p[..d].iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = c.bits() as i64 - bits_lead + 1;
        let e = t as f64 / (d - i) as f64;
        if e > max_exp {
            max_exp = e;
        }
    }
    if max_exp == f64::NEG_INFINITY {
        // p = a_d x^d: the only root is 0.
        return 0.0;
    }
    // Round the exponent up to a 2^-20 grid and pad once more; the slack
    // swamps the sub-ulp rounding of exp2.
    let e = (max_exp * 1048576.0).ceil() / 1048576.0 + 1e-6;
    2.0 * e.exp2()
}

// ---------------------------------------------------------------------------
// Bivariate polynomials: Vec<ZPoly>, index = power of the main variable,
// coefficients in Z[aux].
// ---------------------------------------------------------------------------

type BPoly = Vec<ZPoly>;

fn b_trim(p: &mut BPoly) {
    while p.last().map_or(false, |c| z_is_zero(c)) {
        p.pop();
    }
}

fn b_deg(p: &BPoly) -> isize {
    p.len() as isize - 1
}

fn b_is_zero(p: &BPoly) -> bool {
    p.is_empty()
}

fn b_scale_zp(a: &BPoly, k: &ZPoly) -> BPoly {
    if z_is_zero(k) {
        return Vec::new();
    }
    a.iter().map(|c| z_mul(c, k)).collect()
}

fn b_sub(a: &BPoly, b: &BPoly) -> BPoly {
    let mut out = vec![Vec::new(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.clone();
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = z_sub(&out[i], c);
    }
    b_trim(&mut out);
    out
}

fn b_divexact_zp(a: &BPoly, d: &ZPoly) -> BPoly {
    a.iter()
        .map(|c| {
            if z_is_zero(c) {
                Vec::new()
            } else {
                z_divexact(c, d)
            }
        })
        .collect()
}

fn b_content(p: &BPoly) -> ZPoly {
    let mut g: ZPoly = Vec::new();
    for c in p {
        if z_is_zero(c) {
            continue;
        }
        g = z_gcd(&g, c);
        if z_deg(&g) == 0 && g.first().map_or(false, |v| v.is_one()) {
            break;
        }
    }
    g
}

fn b_primitive(p: &BPoly) -> BPoly {
    if b_is_zero(p) {
        return Vec::new();
    }
    let c = b_content(p);
    b_divexact_zp(p, &c)
}

/// Pseudo-remainder of bivariate polynomials with respect to the main
/// variable, with the same lazy scaling as [`z_prem`].
fn b_prem(a: &BPoly, b: &BPoly) -> BPoly {
    let db = b_deg(b);
    assert!(db >= 0, "prem by zero");
    let lcb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut e = b_deg(a) - db + 1;
    while !b_is_zero(&r) && b_deg(&r) >= db {
        let lcr = r.last().unwrap().clone();
        let k = (b_deg(&r) - db) as usize;
        let mut shifted: BPoly = vec![Vec::new(); k];
        shifted.extend(b_scale_zp(b, &lcr));
        r = b_sub(&b_scale_zp(&r, &lcb), &shifted);
        e -= 1;
    }
    let mut out = r;
    for _ in 0..e.max(0) {
        out = b_scale_zp(&out, &lcb);
    }
    out
}

/// Outcome of the bivariate subresultant remainder sequence.
struct BivariatePrs {
    /// Last nonzero element of the sequence.
    last: BPoly,
    /// Leading coefficients (in the aux variable) of every element of the
    /// sequence; used by the elimination bound.
    leads: Vec<ZPoly>,
}

fn b_subresultant_prs(a: &BPoly, b: &BPoly) -> BivariatePrs {
    let (mut f, mut g) = (a.clone(), b.clone());
    if b_deg(&f) < b_deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    let mut leads = vec![f.last().unwrap().clone(), g.last().unwrap().clone()];
    let mut h: ZPoly = vec![BigInt::one()];
    let mut gg: ZPoly = vec![BigInt::one()];
    loop {
        if b_deg(&g) == 0 {
            return BivariatePrs { last: g, leads };
        }
        let delta = (b_deg(&f) - b_deg(&g)) as u32;
        let r = b_prem(&f, &g);
        if b_is_zero(&r) {
            return BivariatePrs { last: g, leads };
        }
        let mut divisor = gg.clone();
        for _ in 0..delta {
            divisor = z_mul(&divisor, &h);
        }
        f = g;
        g = b_divexact_zp(&r, &divisor);
        leads.push(g.last().unwrap().clone());
        gg = f.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let mut num: ZPoly = vec![BigInt::one()];
            for _ in 0..delta {
                num = z_mul(&num, &gg);
            }
            let mut den: ZPoly = vec![BigInt::one()];
            for _ in 0..delta.saturating_sub(1) {
                den = z_mul(&den, &h);
            }
            z_divexact(&num, &den)
        };
    }
}

// ---------------------------------------------------------------------------
// MultiPoly interop
// ---------------------------------------------------------------------------

/// Clear denominators and express `p` as a polynomial in `main` (1-based)
/// with coefficients in Z[aux]; any variable other than `main`/`aux` must
/// be absent.
fn to_bpoly(p: &MultiPoly, main: usize, aux: usize) -> BPoly {
    // lcm of denominators
    let mut lcm = BigInt::one();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(c.denom());
    }
    let mut out: BPoly = Vec::new();
    for (m, c) in p.terms() {
        let exps = m.exps();
        for (v, &e) in exps.iter().enumerate() {
            assert!(
                e == 0 || v + 1 == main || v + 1 == aux,
                "polynomial uses a variable outside the chosen pair"
            );
        }
        let em = exps[main - 1] as usize;
        let ea = exps[aux - 1] as usize;
        let int_coeff = c.numer() * (&lcm / c.denom());
        if out.len() <= em {
            out.resize(em + 1, Vec::new());
        }
        if out[em].len() <= ea {
            out[em].resize(ea + 1, BigInt::zero());
        }
        out[em][ea] += int_coeff;
    }
    for c in &mut out {
        z_trim(c);
    }
    b_trim(&mut out);
    out
}

fn from_bpoly(p: &BPoly, nvars: usize, main: usize, aux: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    for (em, c) in p.iter().enumerate() {
        for (ea, v) in c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mut exps = vec![0u32; nvars];
            exps[main - 1] = em as u32;
            exps[aux - 1] = ea as u32;
            let term = monomial_poly(nvars, exps, v.clone());
            out = out.add(&term).expect("same nvars");
        }
    }
    out
}

fn monomial_poly(nvars: usize, exps: Vec<u32>, coeff: BigInt) -> MultiPoly {
    let mut acc = MultiPoly::constant(nvars, BigRational::from_integer(coeff));
    for (v, &e) in exps.iter().enumerate() {
        if e > 0 {
            let x = MultiPoly::var(nvars, v + 1).expect("in range");
            acc = acc.mul(&x.pow(e)).expect("same nvars");
        }
    }
    acc
}

/// Exact gcd over Q of two polynomials that jointly involve at most two
/// variables; `None` when three or more variables are active. The result
/// is integer-primitive with positive leading coefficient (constants are
/// normalized to 1).
pub fn gcd_multi(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    assert_eq!(a.nvars(), b.nvars(), "dimension mismatch");
    let nvars = a.nvars();
    if a.is_zero() {
        return Some(b.clone());
    }
    if b.is_zero() {
        return Some(a.clone());
    }
    let mut active: Vec<usize> = a.active_vars();
    for v in b.active_vars() {
        if !active.contains(&v) {
            active.push(v);
        }
    }
    active.sort_unstable();
    match active.len() {
        0 => Some(MultiPoly::one(nvars)),
        1 => {
            let v = active[0];
            // Univariate: represent in (main=v, aux=any other or v itself).
            let aux = if nvars > 1 {
                if v == 1 {
                    2
                } else {
                    1
                }
            } else {
                v
            };
            let pa = to_bpoly(a, v, aux);
            let pb = to_bpoly(b, v, aux);
            // Coefficients are constants in aux; flatten to ZPoly.
            let za: ZPoly = pa
                .iter()
                .map(|c| c.first().cloned().unwrap_or_else(BigInt::zero))
                .collect();
            let zb: ZPoly = pb
                .iter()
                .map(|c| c.first().cloned().unwrap_or_else(BigInt::zero))
                .collect();
            let mut za = za;
            let mut zb = zb;
            z_trim(&mut za);
            z_trim(&mut zb);
            let g = z_primitive(&z_gcd(&za, &zb));
            let gb: BPoly = g.iter().map(|c| vec![c.clone()]).collect();
            Some(normalize_gcd(from_bpoly(&gb, nvars, v, aux)))
        }
        2 => {
            let (main, aux) = (active[0], active[1]);
            let pa = to_bpoly(a, main, aux);
            let pb = to_bpoly(b, main, aux);
            let cont_a = b_content(&pa);
            let cont_b = b_content(&pb);
            let cont_gcd = z_gcd(&cont_a, &cont_b);
            let prim_a = b_divexact_zp(&pa, &cont_a);
            let prim_b = b_divexact_zp(&pb, &cont_b);
            let prs = b_subresultant_prs(&prim_a, &prim_b);
            let main_gcd = if b_deg(&prs.last) >= 1 {
                b_primitive(&prs.last)
            } else {
                vec![vec![BigInt::one()]]
            };
            let combined = b_scale_zp(&main_gcd, &z_primitive(&cont_gcd).clone());
            // Re-apply integer content of cont_gcd? Units of Q; drop it.
            let g = from_bpoly(&combined, nvars, main, aux);
            Some(normalize_gcd(g))
        }
        _ => None,
    }
}

fn normalize_gcd(g: MultiPoly) -> MultiPoly {
    if g.is_constant() && !g.is_zero() {
        return MultiPoly::one(g.nvars());
    }
    // Scale so the graded-lex leading coefficient is positive and the
    // coefficients are an integer-primitive vector.
    let mut denom_lcm = BigInt::one();
    for (_, c) in g.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut content = BigInt::zero();
    for (_, c) in g.terms() {
        let int_c = c.numer() * (&denom_lcm / c.denom());
        content = content.gcd(&int_c);
    }
    if content.is_zero() {
        return g;
    }
    // terms() iterates ascending graded-lex, so the last item is the
    // leading term.
    let lead_negative = g.terms().last().map_or(false, |(_, c)| c.is_negative());
    let mut scale = BigRational::new(denom_lcm, content);
    if lead_negative {
        scale = -scale;
    }
    g.scale(&scale)
}

/// Joint gcd of a list (at most two active variables across all entries);
/// `None` if the exact computation is out of scope.
pub fn joint_gcd(polys: &[MultiPoly]) -> Option<MultiPoly> {
    let mut it = polys.iter();
    let first = it.next()?;
    let mut acc = first.clone();
    for p in it {
        acc = gcd_multi(&acc, p)?;
        if acc.is_constant() {
            return Some(acc);
        }
    }
    Some(acc)
}

/// Decide whether two polynomials in (at most) two joint variables share a
/// nonconstant factor; `None` when undecidable here (three or more
/// variables).
pub fn has_common_factor(a: &MultiPoly, b: &MultiPoly) -> Option<bool> {
    gcd_multi(a, b).map(|g| !g.is_constant())
}

/// Eliminate one variable from a bivariate pair: returns the final
/// univariate element of the subresultant remainder sequence (a resultant
/// up to content) together with the leading coefficients of every
/// sequence element and the input contents, all univariate in `keep`.
///
/// Soundness contract: for any common zero `(x, y)` of the pair, either
/// the tail vanishes at its `keep`-coordinate, or one of the returned
/// side polynomials does (the sequence specializes coherently wherever
/// no leading coefficient vanishes). `None` when the pair shares a
/// nonconstant factor, in which case no univariate projection exists.
pub struct Elimination {
    /// Final univariate element of the sequence.
    pub tail: ZPoly,
    /// Leading coefficients of the sequence elements plus input contents.
    pub sides: Vec<ZPoly>,
}

pub fn eliminate_variable(
    a: &MultiPoly,
    b: &MultiPoly,
    keep: usize,
    eliminate: usize,
) -> Option<Elimination> {
    let pa = to_bpoly(a, eliminate, keep);
    let pb = to_bpoly(b, eliminate, keep);
    if b_is_zero(&pa) || b_is_zero(&pb) {
        return None;
    }
    let cont_a = b_content(&pa);
    let cont_b = b_content(&pb);
    if z_deg(&z_gcd(&cont_a, &cont_b)) >= 1 {
        return None;
    }
    let prim_a = b_divexact_zp(&pa, &cont_a);
    let prim_b = b_divexact_zp(&pb, &cont_b);

    let mut sides: Vec<ZPoly> = vec![cont_a, cont_b];
    let tail;
    if b_deg(&prim_a) == 0 || b_deg(&prim_b) == 0 {
        tail = if b_deg(&prim_a) == 0 {
            prim_a[0].clone()
        } else {
            prim_b[0].clone()
        };
    } else {
        let prs = b_subresultant_prs(&prim_a, &prim_b);
        if b_deg(&prs.last) >= 1 {
            return None;
        }
        tail = prs.last[0].clone();
        sides.extend(prs.leads);
    }
    Some(Elimination { tail, sides })
}

/// Sound bound on the `keep`-coordinate of every common real zero of two
/// bivariate polynomials: eliminates the other variable by a subresultant
/// remainder sequence and returns the largest root-magnitude bound over
/// {final univariate element} ∪ {leading coefficients of the sequence}
/// ∪ {contents of the inputs}, each a univariate polynomial in `keep`
/// that must vanish whenever the sequence's ideal membership degenerates.
///
/// Returns `None` when the sequence exposes a nonconstant common factor
/// (positive-dimensional zero set — no finite bound exists).
pub fn elimination_bound(a: &MultiPoly, b: &MultiPoly, keep: usize, eliminate: usize) -> Option<f64> {
    let elim = eliminate_variable(a, b, keep, eliminate)?;
    let mut bound = root_magnitude_bound(&elim.tail);
    for p in &elim.sides {
        bound = bound.max(root_magnitude_bound(p));
    }
    Some(bound)
}

// ---------------------------------------------------------------------------
// Exact real-root counting in a window (Descartes bisection over BigInt).
// ---------------------------------------------------------------------------

/// In-place Taylor shift by one: `c(t) -> c(t + 1)`.
fn taylor_shift_one(c: &mut [BigInt]) {
    let d = c.len().saturating_sub(1);
    for i in 0..d {
        for j in (i..d).rev() {
            let add = c[j + 1].clone();
            c[j] += add;
        }
    }
}

/// Number of sign variations in a coefficient sequence, zeros skipped.
fn sign_variations(c: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for x in c {
        let s = match x.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Descartes bound on the roots of `w` inside the open unit interval:
/// variations of `(1 + t)^d w(1 / (1 + t))`. Zero variations certify no
/// roots; one variation certifies exactly one.
fn unit_interval_variations(w: &[BigInt]) -> usize {
    let mut rev: Vec<BigInt> = w.iter().rev().cloned().collect();
    taylor_shift_one(&mut rev);
    sign_variations(&rev)
}

/// Finite `f64` as an exact dyadic pair `(m, s)` with value `m / 2^s`.
fn dyadic_parts(x: f64) -> (BigInt, u64) {
    let r = BigRational::from_float(x).expect("finite window endpoint");
    let denom_bits = r.denom().bits() - 1;
    (r.numer().clone(), denom_bits)
}

/// Map `p` onto the window `[a, b]` as an integer polynomial in `t` over
/// `[0, 1]`, scaled by a positive constant (endpoint values scale along).
fn window_transform(p: &ZPoly, a: f64, b: f64) -> Vec<BigInt> {
    let (ma, sa) = dyadic_parts(a);
    let (mb, sb) = dyadic_parts(b);
    let s = sa.max(sb);
    let na = ma << (s - sa);
    let delta = (mb << (s - sb)) - &na;
    let d = p.len() - 1;
    let mut acc: Vec<BigInt> = vec![p[d].clone()];
    let mut scale_bits = 0u64;
    for i in (0..d).rev() {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (j, c) in acc.iter().enumerate() {
            next[j] += c * &na;
            next[j + 1] += c * &delta;
        }
        scale_bits += s;
        next[0] += &p[i] << scale_bits;
        acc = next;
    }
    acc
}

/// Exact number of distinct real roots of `p` in the closed window
/// `[a, b]` (finite `f64` endpoints taken exactly as dyadic rationals).
///
/// `None` when the count cannot be decided: the zero polynomial, a root
/// exactly on an endpoint, or roots too tangled for sign variations to
/// collapse within the subdivision depth cap (a multiple real root, or a
/// cluster tighter than `2^-128` of the window width).
pub fn count_real_roots_window(p: &ZPoly, a: f64, b: f64) -> Option<usize> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return None;
    }
    if z_is_zero(p) {
        return None;
    }
    if z_deg(p) == 0 {
        return Some(0);
    }
    let w = window_transform(p, a, b);
    if w[0].is_zero() || w.iter().fold(BigInt::zero(), |acc, c| acc + c).is_zero() {
        return None;
    }
    let mut count = 0usize;
    let mut stack: Vec<(Vec<BigInt>, usize)> = vec![(w, 0)];
    while let Some((c, depth)) = stack.pop() {
        match unit_interval_variations(&c) {
            0 => continue,
            1 => count += 1,
            _ => {
                if depth >= 128 {
                    return None;
                }
                let d = c.len() - 1;
                let left: Vec<BigInt> =
                    c.iter().enumerate().map(|(i, x)| x << (d - i)).collect();
                let mut right = left.clone();
                taylor_shift_one(&mut right);
                // A root exactly at the split point appears as a factor of
                // t in the right child; it is invisible to the variation
                // counts of both children (endpoint roots transform to
                // powers of t), so count it here exactly once.
                if right[0].is_zero() {
                    count += 1;
                }
                stack.push((left, depth + 1));
                stack.push((right, depth + 1));
            }
        }
    }
    Some(count)
}

/// Formal derivative.
fn z_derivative(p: &ZPoly) -> ZPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Squarefree part `p / gcd(p, p')`: same real roots, all simple.
pub fn squarefree_part(p: &ZPoly) -> ZPoly {
    let g = z_gcd(p, &z_derivative(p));
    if z_deg(&g) <= 0 {
        return p.clone();
    }
    z_divexact(p, &g)
}

/// Divide out the largest common power of two (a positive scaling, so
/// sign variations and root locations are untouched). Keeps the window
/// coefficient vectors from growing by `deg` bits per bisection level.
fn strip_common_twos(c: &mut [BigInt]) {
    let mut min_tz = u64::MAX;
    for x in c.iter() {
        if !x.is_zero() {
            min_tz = min_tz.min(x.trailing_zeros().unwrap_or(0));
            if min_tz == 0 {
                return;
            }
        }
    }
    if min_tz == u64::MAX {
        return;
    }
    for x in c.iter_mut() {
        if !x.is_zero() {
            *x = &*x >> min_tz;
        }
    }
}

/// One isolated real root of an integer polynomial: a dyadic window
/// containing exactly that root, refinable on demand by exact bisection.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    lo: BigRational,
    hi: BigRational,
    /// Window-transformed coefficients: the root is the unique zero of
    /// this vector in (0, 1). Empty when the root was hit exactly
    /// (`lo == hi`).
    win: Vec<BigInt>,
}

impl IsolatedRoot {
    /// Lower window edge, rounded outward.
    pub fn lo(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.lo.to_f64().unwrap_or(f64::NEG_INFINITY).next_down()
    }

    /// Upper window edge, rounded outward.
    pub fn hi(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.hi.to_f64().unwrap_or(f64::INFINITY).next_up()
    }

    pub fn width(&self) -> f64 {
        self.hi() - self.lo()
    }

    /// Bisect until the window is narrower than `target` (absolute). Each
    /// step keeps the unique child window whose sign variations stay at
    /// one; a root landing exactly on a midpoint collapses the window to a
    /// point.
    pub fn refine(&mut self, target: f64) {
        while !self.win.is_empty() && self.width() > target {
            let d = self.win.len() - 1;
            let mut left: Vec<BigInt> = self
                .win
                .iter()
                .enumerate()
                .map(|(i, x)| x << (d - i))
                .collect();
            strip_common_twos(&mut left);
            let mut right = left.clone();
            taylor_shift_one(&mut right);
            let mid = (&self.lo + &self.hi) / BigInt::from(2);
            if right[0].is_zero() {
                self.lo = mid.clone();
                self.hi = mid;
                self.win.clear();
                return;
            }
            if unit_interval_variations(&left) == 1 {
                self.hi = mid;
                self.win = left;
            } else {
                self.lo = mid;
                strip_common_twos(&mut right);
                self.win = right;
            }
        }
    }
}

/// Wrap the single real root of a squarefree `p` in the window
/// `[lo, hi]` as an [`IsolatedRoot`], so it can be bisected further.
/// Sound refinement needs the window transform to show exactly one sign
/// variation (Descartes may overcount by two on wider windows) and roots
/// on the window edges would be invisible to variation counts; `None`
/// when either precondition fails.
pub fn isolated_root_in_window(p: &ZPoly, lo: f64, hi: f64) -> Option<IsolatedRoot> {
    if z_deg(p) < 1 || !(lo < hi) {
        return None;
    }
    let a = BigRational::from_float(lo)?;
    let b = BigRational::from_float(hi)?;
    let mut w = window_transform(p, lo, hi);
    let at_one = w.iter().fold(BigInt::zero(), |acc, c| acc + c);
    if w[0].is_zero() || at_one.is_zero() {
        return None;
    }
    strip_common_twos(&mut w);
    if unit_interval_variations(&w) != 1 {
        return None;
    }
    Some(IsolatedRoot { lo: a, hi: b, win: w })
}

/// Isolate every real root of `p` (multiplicities erased through the
/// squarefree part). `None` for the zero polynomial or if sign variations
/// fail to collapse within a generous depth cap — which cannot happen for
/// a squarefree polynomial short of astronomically close roots.
pub fn isolate_univariate_roots(p: &ZPoly) -> Option<Vec<IsolatedRoot>> {
    if z_is_zero(p) {
        return None;
    }
    if z_deg(p) == 0 {
        return Some(Vec::new());
    }
    let sf = squarefree_part(p);
    let mut bound = 1.0f64;
    let fuj = root_magnitude_bound(&sf);
    if !fuj.is_finite() {
        return None;
    }
    while bound < fuj {
        bound *= 2.0;
    }
    // An endpoint root would be invisible to the variation counts; the
    // bound is strict so doubling once more always clears it.
    let mut w;
    loop {
        w = window_transform(&sf, -bound, bound);
        let at_one = w.iter().fold(BigInt::zero(), |acc, c| acc + c);
        if !w[0].is_zero() && !at_one.is_zero() {
            break;
        }
        bound *= 2.0;
    }
    strip_common_twos(&mut w);

    let mut roots: Vec<IsolatedRoot> = Vec::new();
    let lo0 = BigRational::from_float(-bound).unwrap();
    let hi0 = BigRational::from_float(bound).unwrap();
    let mut stack: Vec<(Vec<BigInt>, BigRational, BigRational, usize)> = vec![(w, lo0, hi0, 0)];
    while let Some((c, lo, hi, depth)) = stack.pop() {
        match unit_interval_variations(&c) {
            0 => continue,
            1 => roots.push(IsolatedRoot { lo, hi, win: c }),
            _ => {
                if depth >= 256 {
                    return None;
                }
                let d = c.len() - 1;
                let mut left: Vec<BigInt> =
                    c.iter().enumerate().map(|(i, x)| x << (d - i)).collect();
                strip_common_twos(&mut left);
                let mut right = left.clone();
                taylor_shift_one(&mut right);
                strip_common_twos(&mut right);
                let mid = (&lo + &hi) / BigInt::from(2);
                if right[0].is_zero() {
                    roots.push(IsolatedRoot {
                        lo: mid.clone(),
                        hi: mid.clone(),
                        win: Vec::new(),
                    });
                }
                stack.push((left, lo, mid.clone(), depth + 1));
                stack.push((right, mid, hi, depth + 1));
            }
        }
    }
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    Some(roots)
}

/// Summed distinct-real-root count of several polynomials over the closed
/// window `[lo, hi]`. A root shared between two of the polynomials counts
/// twice, so the sum is an upper bound on the number of distinct values —
/// but zero is exact. Constant and zero entries contribute nothing; `None`
/// when any individual count is undecidable.
pub fn count_roots_multi(polys: &[ZPoly], lo: f64, hi: f64) -> Option<usize> {
    let mut total = 0usize;
    for p in polys {
        if z_deg(p) <= 0 {
            continue;
        }
        total += count_real_roots_window(p, lo, hi)?;
    }
    Some(total)
}

/// Number of distinct real values in the closed window `[lo, hi]` that
/// are roots of at least one of the polynomials, saturated at two:
/// `Some(0)` — none; `Some(1)` — exactly one, shared by every polynomial
/// that has a root there (their running gcd retains it); `Some(2)` — at
/// least two distinct values (or a single polynomial with several).
/// `None` when a window count is undecidable.
///
/// The distinction matters where several projection polynomials vanish
/// together (a degenerate fiber collapses the subresultant chain, so the
/// tail and many side polynomials share the root): per-polynomial counts
/// then inflate while the number of distinct coordinates stays one.
pub fn distinct_strip_roots(polys: &[ZPoly], lo: f64, hi: f64) -> Option<usize> {
    let mut holders: Vec<&ZPoly> = Vec::new();
    for p in polys {
        if z_deg(p) <= 0 {
            continue;
        }
        match count_real_roots_window(p, lo, hi)? {
            0 => {}
            1 => holders.push(p),
            _ => return Some(2),
        }
    }
    if holders.is_empty() {
        return Some(0);
    }
    if holders.len() > 1 {
        // Fold the gcd starting from the lowest degrees: once the common
        // factor is small, each further step is one cheap pseudo-division
        // of a large polynomial by a small one.
        holders.sort_by_key(|p| p.len());
        let mut g = z_gcd(holders[0], holders[1]);
        for p in &holders[2..] {
            if z_deg(&g) < 1 {
                return Some(2);
            }
            g = z_gcd(&g, p);
        }
        if z_deg(&g) < 1 || count_real_roots_window(&g, lo, hi)? != 1 {
            return Some(2);
        }
    }
    Some(1)
}

/// Upper bound on the real zeros of `{a, b}`'s common-zero projection
/// inside `[lo, hi]` on the `keep` coordinate: summed real-root counts of
/// the elimination tail and all side polynomials (a root shared between
/// them counts twice, so this is only an upper bound — but zero is exact:
/// no common real zero of the pair has its `keep`-coordinate in the
/// window). Multiple roots are counted once, through the squarefree parts.
/// `None` when elimination degenerates or any count is undecidable.
pub fn count_projected_zeros(
    a: &MultiPoly,
    b: &MultiPoly,
    keep: usize,
    eliminate: usize,
    lo: f64,
    hi: f64,
) -> Option<usize> {
    let elim = eliminate_variable(a, b, keep, eliminate)?;
    count_roots_multi(&projection_squarefree(&elim), lo, hi)
}

/// Squarefree parts of an elimination's tail and side polynomials (the
/// nonconstant ones): the polynomials whose real roots in a window bound
/// the projected zero coordinates, with multiplicities collapsed so the
/// window counts stay decidable at multiple roots.
pub fn projection_squarefree(elim: &Elimination) -> Vec<ZPoly> {
    std::iter::once(&elim.tail)
        .chain(elim.sides.iter())
        .filter(|p| z_deg(p) >= 1)
        .map(|p| squarefree_part(p))
        .collect()
}

/// Restriction of a bivariate polynomial to the diagonal line `x2 = s*x1`
/// (`s = ±1`), as an integer polynomial in the line parameter `t = x1`.
/// Denominators are cleared by a common positive factor, which moves no
/// roots.
pub fn restrict_to_line(p: &MultiPoly, s: i64) -> ZPoly {
    debug_assert!(p.nvars() == 2 && (s == 1 || s == -1));
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let deg = p.total_degree().max(0) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exps();
        let (a, b) = (e[0] as usize, e[1] as usize);
        let mut v = c.numer() * (&den / c.denom());
        if s < 0 && b % 2 == 1 {
            v = -v;
        }
        out[a + b] += v;
    }
    z_trim(&mut out);
    out
}

/// Squarefree integer polynomial whose real roots are exactly the
/// `x1`-coordinates of the common zeros of `{a, b}` on the line
/// `x2 = s*x1`. Constant (or empty) when the pair has no zero on the
/// line; the zero polynomial when the whole line consists of common
/// zeros.
pub fn line_common_zeros(a: &MultiPoly, b: &MultiPoly, s: i64) -> ZPoly {
    let g = z_gcd(&restrict_to_line(a, s), &restrict_to_line(b, s));
    if z_is_zero(&g) {
        return g;
    }
    squarefree_part(&g)
}

/// Decide whether `p` vanishes at a real root of `h` known to be the only
/// one in the closed window `[lo, hi]`, where the root parameterizes the
/// point `(t, s*t)`. Exact: the root is shared iff the gcd of `h` with
/// the restricted `p` retains it, which a window root count detects. The
/// identically-zero restriction means `p` vanishes on the whole line.
/// `None` when the count is undecidable.
pub fn vanishes_at_line_root(
    h: &ZPoly,
    p: &MultiPoly,
    s: i64,
    lo: f64,
    hi: f64,
) -> Option<bool> {
    let r = restrict_to_line(p, s);
    if z_is_zero(&r) {
        return Some(true);
    }
    let e = z_gcd(h, &squarefree_part(&r));
    match count_real_roots_window(&e, lo, hi) {
        Some(1) => Some(true),
        Some(0) => Some(false),
        _ => None,
    }
}

/// Reduction of a bivariate polynomial modulo the circle relation
/// `y^2 = rho - x^2`: integer polynomials `(A, B)` in `x` with
/// `p = A + B*y` everywhere on the circle. One common positive
/// denominator is cleared across both parts, which preserves zero sets
/// and relative signs.
pub fn reduce_mod_circle(p: &MultiPoly, rho: &BigRational) -> (ZPoly, ZPoly) {
    debug_assert!(p.nvars() == 2);
    let mut even: Vec<BigRational> = Vec::new();
    let mut odd: Vec<BigRational> = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exps();
        let (a, b) = (e[0] as usize, e[1] as usize);
        // (rho - x^2)^(b/2), degrees stay tiny.
        let mut pw: Vec<BigRational> = vec![BigRational::one()];
        for _ in 0..(b / 2) {
            let mut nx = vec![BigRational::zero(); pw.len() + 2];
            for (i, v) in pw.iter().enumerate() {
                nx[i] += v * rho;
                nx[i + 2] -= v;
            }
            pw = nx;
        }
        let dst = if b % 2 == 0 { &mut even } else { &mut odd };
        if dst.len() < pw.len() + a {
            dst.resize(pw.len() + a, BigRational::zero());
        }
        for (i, v) in pw.iter().enumerate() {
            dst[a + i] += v * c;
        }
    }
    let mut den = BigInt::one();
    for v in even.iter().chain(odd.iter()) {
        den = den.lcm(v.denom());
    }
    let clear = |v: &[BigRational]| -> ZPoly {
        let mut out: ZPoly = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        z_trim(&mut out);
        out
    };
    (clear(&even), clear(&odd))
}

/// `pd*A^2 - B^2*(pn - pd*x^2)` for `rho = pn/pd`: the integer polynomial
/// vanishing exactly at the `x`-coordinates where `A + B*y` vanishes on
/// one of the circle branches `y = ±sqrt(rho - x^2)` (for `x^2 < rho`).
/// The positive `pd` scaling moves no roots.
pub fn circle_branch_product(a: &ZPoly, b: &ZPoly, rho: &BigRational) -> ZPoly {
    let (pn, pd) = (rho.numer(), rho.denom());
    let a2 = z_mul(a, a);
    let b2 = z_mul(b, b);
    let mut factor: ZPoly = vec![pn.clone(), BigInt::zero(), -pd.clone()];
    z_trim(&mut factor);
    z_sub(&z_scale(&a2, pd), &z_mul(&b2, &factor))
}

/// Decide whether `p` (already squarefree or not) shares the single real
/// root that `g` — squarefree — has in the closed window `[lo, hi]`.
/// Exact: the gcd divides `g`, so it is squarefree and the window count
/// is decisive. The zero polynomial shares every root. `None` when the
/// count is undecidable.
pub fn shares_window_root(g: &ZPoly, p: &ZPoly, lo: f64, hi: f64) -> Option<bool> {
    if z_is_zero(p) {
        return Some(true);
    }
    let e = z_gcd(g, p);
    match count_real_roots_window(&e, lo, hi) {
        Some(1) => Some(true),
        Some(0) => Some(false),
        _ => None,
    }
}

/// Exact sign of `p` at the single real root of `g` in `[lo, hi]`
/// (`g` squarefree, the root not shared with `p`): when `p` has no root
/// of its own in the window its sign there is constant, so the exact
/// rational value at the left endpoint decides. `None` when `p` vanishes
/// somewhere in the window (including at the root — test that with
/// [`shares_window_root`] first) or a count is undecidable.
pub fn sign_at_window_root(p: &ZPoly, lo: f64, hi: f64) -> Option<i32> {
    if count_real_roots_window(p, lo, hi) != Some(0) {
        return None;
    }
    let x = BigRational::from_float(lo)?;
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * &x + BigRational::from_integer(c.clone());
    }
    if acc.is_zero() {
        return None;
    }
    Some(if acc > BigRational::zero() { 1 } else { -1 })
}

/// On which circle branch does `A + B*y` vanish at the single real root
/// of `g` (squarefree) in the window? `Some(0)`: both branches — `A` and
/// `B` vanish at the root, so the whole fiber does. `Some(±1)`: exactly
/// the branch `y = ±sqrt(...)`, read off the exact sign of `A*B` there
/// (the branch product vanishing at the root makes `|A| = |B|*sqrt`, so
/// the sign alone picks the branch). `None`: undecidable at this window
/// width, or inconsistent with the branch product vanishing.
pub fn vanishing_branch(g: &ZPoly, a: &ZPoly, b: &ZPoly, lo: f64, hi: f64) -> Option<i32> {
    let az = shares_window_root(g, a, lo, hi)?;
    let bz = shares_window_root(g, b, lo, hi)?;
    if az && bz {
        return Some(0);
    }
    if az != bz {
        return None;
    }
    let sa = sign_at_window_root(a, lo, hi)?;
    let sb = sign_at_window_root(b, lo, hi)?;
    Some(-sa * sb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn zp(coeffs: &[i64]) -> ZPoly {
        let mut v: ZPoly = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        z_trim(&mut v);
        v
    }

    #[test]
    fn univariate_gcd_basics() {
        // gcd((x+1)^3 (x-2), (x+1)(x-3)) = x+1
        let a = z_mul(&z_mul(&zp(&[1, 1]), &z_mul(&zp(&[1, 1]), &zp(&[1, 1]))), &zp(&[-2, 1]));
        let b = z_mul(&zp(&[1, 1]), &zp(&[-3, 1]));
        assert_eq!(z_gcd(&a, &b), zp(&[1, 1]));

        // Coprime pair
        assert_eq!(z_gcd(&zp(&[-1, 0, 1]), &zp(&[1, 1, 1])), zp(&[1]));

        // Content handling: gcd(6x, 4) = 2
        assert_eq!(z_gcd(&zp(&[0, 6]), &zp(&[4])), zp(&[2]));

        // Zero cases
        assert_eq!(z_gcd(&zp(&[]), &zp(&[-3, 1])), zp(&[-3, 1]));
    }

    #[test]
    fn exact_division_checks() {
        let prod = z_mul(&zp(&[2, 3, 1]), &zp(&[-5, 7]));
        assert_eq!(z_divexact(&prod, &zp(&[-5, 7])), zp(&[2, 3, 1]));
    }

    #[test]
    fn window_root_counts() {
        // (3x - 1)(7x - 2)(x - 5): roots 1/3, 2/7, 5.
        let p = z_mul(&z_mul(&zp(&[-1, 3]), &zp(&[-2, 7])), &zp(&[-5, 1]));
        assert_eq!(count_real_roots_window(&p, 0.0, 1.0), Some(2));
        assert_eq!(count_real_roots_window(&p, 0.25, 0.3), Some(1));
        assert_eq!(count_real_roots_window(&p, 0.4, 0.9), Some(0));
        assert_eq!(count_real_roots_window(&p, 2.0, 8.0), Some(1));
        assert_eq!(count_real_roots_window(&p, -3.0, 6.0), Some(3));

        // Exact root on the split midpoint: (2x - 1) in [0, 1].
        assert_eq!(count_real_roots_window(&zp(&[-1, 2]), 0.0, 1.0), Some(1));
        let sq = z_mul(&zp(&[-1, 2]), &zp(&[-1, 2]));
        let with_more = z_mul(&sq, &zp(&[-7, 8]));
        assert_eq!(count_real_roots_window(&with_more, 0.75, 2.0), Some(1));

        // Negative coordinates.
        let q = z_mul(&zp(&[1, 3]), &zp(&[5, 2]));
        assert_eq!(count_real_roots_window(&q, -4.0, 0.0), Some(2));
    }

    #[test]
    fn window_count_ambiguity() {
        // Double root: variations never collapse.
        let dbl = z_mul(&zp(&[-1, 3]), &zp(&[-1, 3]));
        assert_eq!(count_real_roots_window(&dbl, 0.0, 1.0), None);

        // Root exactly on a window endpoint.
        assert_eq!(count_real_roots_window(&zp(&[-1, 2]), 0.5, 1.0), None);
        assert_eq!(count_real_roots_window(&zp(&[-1, 2]), 0.0, 0.5), None);

        // A pair separated by 2^-45 still resolves within the depth cap.
        let a = zp(&[-1, 4]);
        let b = vec![
            BigInt::from(-((1i64 << 45) + 4)),
            BigInt::from(4i64 << 45),
        ];
        let pair = z_mul(&a, &b);
        assert_eq!(count_real_roots_window(&pair, 0.0, 1.0), Some(2));
    }

    #[test]
    fn root_bound_is_sound_and_tight() {
        // x^2 - 4: roots +-2; bound covers them without exploding.
        let b = root_magnitude_bound(&zp(&[-4, 0, 1]));
        assert!(b >= 2.0 && b <= 8.01, "bound {}", b);
        // constant and pure-power polynomials: only root is 0 (or none).
        assert_eq!(root_magnitude_bound(&zp(&[7])), 0.0);
        assert_eq!(root_magnitude_bound(&zp(&[0, 0, 0, 5])), 0.0);
        // 3x^3 - 10x: roots 0, +-sqrt(10/3) ~ 1.826.
        let b = root_magnitude_bound(&zp(&[0, -10, 0, 3]));
        assert!(b >= 1.83, "bound {}", b);
        assert!(b <= 8.01, "bound {}", b);
        // Huge mid-coefficient far from the lead: the exponent keeps the
        // bound proportional to the root size, not the ratio. Roots of
        // x^8 - 1e14 x + 1: magnitude <= (1e14)^(1/7) ~ 100.
        let big = {
            let mut v = vec![BigInt::from(1i64), BigInt::from(-100_000_000_000_000i64)];
            v.extend(std::iter::repeat(BigInt::from(0)).take(6));
            v.push(BigInt::from(1));
            v
        };
        let b = root_magnitude_bound(&big);
        assert!(b >= 100.0, "bound {}", b);
        assert!(b <= 500.0, "bound {} should stay near the 7th root", b);
    }

    #[test]
    fn bivariate_gcd_shared_factor() {
        let a = parse_poly("x1^2 - x2^2", 2).unwrap();
        let b = parse_poly("x1 - x2", 2).unwrap();
        let g = gcd_multi(&a, &b).unwrap();
        assert_eq!(g, parse_poly("x1 - x2", 2).unwrap());

        let c = parse_poly("x1 + x2 + 1", 2).unwrap();
        let g2 = gcd_multi(&a, &c).unwrap();
        assert!(g2.is_constant());
    }

    #[test]
    fn bivariate_gcd_content_factor() {
        // Common factor living purely in the non-main variable.
        let a = parse_poly("(x2 - 1)*(x1^2 + 1)", 2).unwrap();
        let b = parse_poly("(x2 - 1)*(x1 + 3)", 2).unwrap();
        let g = gcd_multi(&a, &b).unwrap();
        assert_eq!(g, parse_poly("x2 - 1", 2).unwrap());
        assert_eq!(has_common_factor(&a, &b), Some(true));
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        let a = parse_poly("1/2*x1^2 - 1/2", 2).unwrap();
        let b = parse_poly("x1 - 1", 2).unwrap();
        let g = gcd_multi(&a, &b).unwrap();
        assert_eq!(g, parse_poly("x1 - 1", 2).unwrap());
    }

    #[test]
    fn trivariate_gcd_not_attempted() {
        let a = parse_poly("x1*x2*x3", 3).unwrap();
        let b = parse_poly("x1 + x2 + x3", 3).unwrap();
        assert_eq!(gcd_multi(&a, &b), None);
        // ... but trivariate inputs touching only two variables are fine.
        let c = parse_poly("x1^2 - x3^2", 3).unwrap();
        let d = parse_poly("x1 - x3", 3).unwrap();
        assert_eq!(gcd_multi(&c, &d).unwrap(), parse_poly("x1 - x3", 3).unwrap());
    }

    #[test]
    fn elimination_bound_simple_system() {
        // {x1^2 + x2^2 - 25, x1 - 3}: common zeros (3, +-4).
        let a = parse_poly("x1^2 + x2^2 - 25", 2).unwrap();
        let b = parse_poly("x1 - 3", 2).unwrap();
        let bx2 = elimination_bound(&a, &b, 2, 1).unwrap();
        assert!(bx2 >= 4.0, "x2 bound {} must cover root 4", bx2);
        let bx1 = elimination_bound(&a, &b, 1, 2).unwrap();
        assert!(bx1 >= 3.0, "x1 bound {} must cover root 3", bx1);
    }

    #[test]
    fn elimination_bound_detects_common_factor() {
        let a = parse_poly("(x1 - x2)*(x1 + 1)", 2).unwrap();
        let b = parse_poly("(x1 - x2)*(x2 - 5)", 2).unwrap();
        assert_eq!(elimination_bound(&a, &b, 1, 2), None);
    }

    // Critical system Q_i = 2 (d_i f) U - 5 f (d_i U) of the quartic
    // f = x1^4 + 2 x1^2 x2^2 + x2^4 - 2 x1^2 - 2 x2^2 for two centers.
    const TOY_Q_CENTER_ORIGIN: [&str; 2] = [
        "-2*x1^5 - 4*x2^2*x1^3 + 20*x1^3 - 2*x2^4*x1 + 20*x2^2*x1 - 8*x1",
        "-2*x2^5 - 4*x1^2*x2^3 + 20*x2^3 - 2*x1^4*x2 + 20*x1^2*x2 - 8*x2",
    ];
    const TOY_Q_CENTER_SHIFTED: [&str; 2] = [
        "-2*x1^5 - 4*x2^2*x1^3 - 16*x2*x1^3 + 28*x1^3 - 2*x2^4*x1 - 16*x2^3*x1 \
         + 28*x2^2*x1 + 16*x2*x1 - 16*x1",
        "-2*x2^5 - 6*x2^4 - 4*x1^2*x2^3 + 28*x2^3 + 4*x1^2*x2^2 - 4*x2^2 \
         - 2*x1^4*x2 + 28*x1^2*x2 - 16*x2 + 10*x1^4 - 20*x1^2",
    ];

    #[test]
    fn degenerate_center_yields_common_factor() {
        // f is radially symmetric about the origin, so centering U at the
        // origin leaves a whole circle of critical points: Q1 and Q2 share
        // the factor (x1^2+x2^2)^2 - 10(x1^2+x2^2) + 4.
        let q1 = parse_poly(TOY_Q_CENTER_ORIGIN[0], 2).unwrap();
        let q2 = parse_poly(TOY_Q_CENTER_ORIGIN[1], 2).unwrap();
        assert_eq!(has_common_factor(&q1, &q2), Some(true));
        let g = gcd_multi(&q1, &q2).unwrap();
        let expected =
            parse_poly("x1^4 + 2*x1^2*x2^2 + x2^4 - 10*x1^2 - 10*x2^2 + 4", 2).unwrap();
        assert_eq!(g, expected);
        assert_eq!(elimination_bound(&q1, &q2, 1, 2), None);
    }

    #[test]
    fn shifted_center_is_nondegenerate_with_sound_bounds() {
        let q1 = parse_poly(TOY_Q_CENTER_SHIFTED[0], 2).unwrap();
        let q2 = parse_poly(TOY_Q_CENTER_SHIFTED[1], 2).unwrap();
        assert_eq!(has_common_factor(&q1, &q2), Some(false));
        // The five real solutions sit at x1 = 0,
        // x2 in {-5.5436, -0.6561, 0, 1, 2.1996}; both coordinate bounds
        // must cover them.
        let bx1 = elimination_bound(&q1, &q2, 1, 2).unwrap();
        let bx2 = elimination_bound(&q1, &q2, 2, 1).unwrap();
        assert!(bx1 >= 0.0 && bx1.is_finite());
        assert!(bx2 >= 5.5436, "x2 bound {} too small", bx2);
        assert!(bx2.is_finite());
    }

    #[test]
    fn joint_gcd_folds() {
        let p = parse_poly("(x1 - 1)^2 * (x2 + 2)", 2).unwrap();
        let d1 = p.partial(1).unwrap();
        let d2 = p.partial(2).unwrap();
        let g = joint_gcd(&[p, d1, d2]).unwrap();
        assert_eq!(g, parse_poly("x1 - 1", 2).unwrap());
    }
}
