//! Gcd and exact division for bivariate integer polynomials.
//!
//! Laurent polynomials are shifted into ordinary polynomials and viewed in
//! `Z[nu][q]`: a dense vector over the `q` degree whose entries are dense
//! vectors over the `nu` degree. Gcds first try the heuristic method
//! (evaluate at a large integer, take the integer gcd, read the result back
//! as balanced digits and confirm by division), and fall back to primitive
//! polynomial remainder sequences at both levels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{Exponent, LaurentPoly};

/// Dense univariate polynomial, index = degree, no trailing zeros.
type UPoly = Vec<BigInt>;
/// Dense polynomial in `q` with `Z[nu]` coefficients, no trailing zeros.
type BPoly = Vec<UPoly>;

fn u_trim(mut a: UPoly) -> UPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn u_is_one(a: &UPoly) -> bool {
    a.len() == 1 && a[0].is_one()
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(out)
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x - y);
    }
    u_trim(out)
}

fn u_add(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x + y);
    }
    u_trim(out)
}

fn u_content(a: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn u_div_int(a: &UPoly, c: &BigInt) -> UPoly {
    a.iter().map(|x| x / c).collect()
}

/// Primitive part with positive leading coefficient.
fn u_pp(a: &UPoly) -> UPoly {
    let mut c = u_content(a);
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    u_div_int(a, &c)
}

/// Exact quotient in `Z[nu]`.
fn u_div_exact(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let (t, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let k = dr - db;
        for (i, y) in b.iter().enumerate() {
            r[i + k] -= &t * y;
        }
        quo[k] = t;
        r = u_trim(r);
    }
    if r.is_empty() {
        Some(u_trim(quo))
    } else {
        None
    }
}

/// Pseudo-remainder up to a nonzero constant factor.
fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let k = dr - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, y) in b.iter().enumerate() {
            r[i + k] -= &lr * y;
        }
        r = u_trim(r);
    }
    r
}

/// Gcd in `Z[nu]`, with positive leading coefficient.
fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return u_pp_with_content(b);
    }
    if b.is_empty() {
        return u_pp_with_content(a);
    }
    let ca = u_content(a);
    let cb = u_content(b);
    let c = ca.gcd(&cb);
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let mut x = u_div_int(a, &ca);
    let mut y = u_div_int(b, &cb);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = u_prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { u_pp(&r) };
    }
    let g = u_pp(&x);
    g.iter().map(|v| v * &c).collect()
}

fn u_pp_with_content(a: &UPoly) -> UPoly {
    if a.last().is_some_and(|l| l.is_negative()) {
        a.iter().map(|x| -x).collect()
    } else {
        a.clone()
    }
}

fn b_trim(mut a: BPoly) -> BPoly {
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
    a
}

/// Gcd of the `Z[nu]` coefficients.
fn b_content(a: &BPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in a {
        if c.is_empty() {
            continue;
        }
        g = u_gcd(&g, c);
        if u_is_one(&g) {
            break;
        }
    }
    g
}

fn b_div_u(a: &BPoly, c: &UPoly) -> BPoly {
    if u_is_one(c) {
        return a.clone();
    }
    a.iter()
        .map(|x| u_div_exact(x, c).expect("content divides every coefficient"))
        .collect()
}

fn b_pp(a: &BPoly) -> BPoly {
    let mut c = b_content(a);
    let lead_neg = a
        .last()
        .and_then(|l| l.last())
        .is_some_and(|x| x.is_negative());
    if lead_neg {
        c = c.iter().map(|x| -x).collect();
    }
    b_div_u(a, &c)
}

fn b_prem(a: &BPoly, b: &BPoly) -> BPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let k = dr - db;
        for x in r.iter_mut() {
            *x = u_mul(x, lb);
        }
        for (i, y) in b.iter().enumerate() {
            let t = u_mul(&lr, y);
            r[i + k] = u_sub(&r[i + k], &t);
        }
        r = b_trim(r);
    }
    r
}

fn b_gcd(a: &BPoly, b: &BPoly) -> BPoly {
    if a.is_empty() {
        return b_normalize_sign(b.clone());
    }
    if b.is_empty() {
        return b_normalize_sign(a.clone());
    }
    let ca = b_content(a);
    let cb = b_content(b);
    let c = u_gcd(&ca, &cb);
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let mut x = b_div_u(a, &ca);
    let mut y = b_div_u(b, &cb);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![c];
        }
        let r = b_prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { b_pp(&r) };
    }
    let g = b_pp(&x);
    g.iter().map(|v| u_mul(v, &c)).collect()
}

fn b_normalize_sign(a: BPoly) -> BPoly {
    let neg = a
        .last()
        .and_then(|l| l.last())
        .is_some_and(|x| x.is_negative());
    if neg {
        a.into_iter()
            .map(|u| u.into_iter().map(|x| -x).collect())
            .collect()
    } else {
        a
    }
}

fn b_div_exact(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let mut quo: BPoly = vec![Vec::new(); a.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let t = u_div_exact(&r[dr], lb)?;
        let k = dr - db;
        for (i, y) in b.iter().enumerate() {
            let p = u_mul(&t, y);
            r[i + k] = u_sub(&r[i + k], &p);
        }
        quo[k] = u_add(&quo[k], &t);
        r = b_trim(r);
    }
    if r.is_empty() {
        Some(b_trim(quo))
    } else {
        None
    }
}

fn u_max_norm(a: &UPoly) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}

fn b_max_norm(a: &BPoly) -> BigInt {
    a.iter().map(u_max_norm).max().unwrap_or_default()
}

fn u_eval(a: &UPoly, x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Balanced base-`x` digits of `h`, low first.
fn digits(mut h: BigInt, x: &BigInt) -> UPoly {
    let half = x / 2;
    let mut out = Vec::new();
    while !h.is_zero() {
        let mut g = h.mod_floor(x);
        if g > half {
            g -= x;
        }
        h = (&h - &g) / x;
        out.push(g);
    }
    out
}

/// Evaluation point for the heuristic gcd, following Char, Geddes and
/// Gonnet.
fn heu_start(na: &BigInt, nb: &BigInt, la: &BigInt, lb: &BigInt) -> BigInt {
    let b: BigInt = BigInt::from(2) * na.min(nb).clone() + 29;
    let lower: BigInt = BigInt::from(2) * (na / la.abs()).min(nb / lb.abs()) + 4;
    let capped = b.clone().min(BigInt::from(99) * b.sqrt());
    capped.max(lower)
}

fn heu_next(x: &BigInt) -> BigInt {
    x * BigInt::from(73794) * x.sqrt().sqrt() / BigInt::from(27011)
}

const HEU_ROUNDS: usize = 6;

/// Heuristic gcd of primitive polynomials in `Z[x]`.
fn u_heu_gcd(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if a.len() == 1 || b.len() == 1 {
        return Some(vec![BigInt::one()]);
    }
    let mut x = heu_start(&u_max_norm(a), &u_max_norm(b), a.last()?, b.last()?);
    for _ in 0..HEU_ROUNDS {
        let (ea, eb) = (u_eval(a, &x), u_eval(b, &x));
        if !ea.is_zero() && !eb.is_zero() {
            let h = u_pp(&digits(ea.gcd(&eb), &x));
            if u_div_exact(a, &h).is_some() && u_div_exact(b, &h).is_some() {
                return Some(h);
            }
        }
        x = heu_next(&x);
    }
    None
}

/// Heuristic gcd in `Z[nu][q]` of polynomials with integer content 1,
/// evaluating `nu`.
fn b_heu_gcd(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    let la = a.last()?.last()?;
    let lb = b.last()?.last()?;
    let mut x = heu_start(&b_max_norm(a), &b_max_norm(b), la, lb);
    for _ in 0..HEU_ROUNDS {
        let ea = u_trim(a.iter().map(|c| u_eval(c, &x)).collect());
        let eb = u_trim(b.iter().map(|c| u_eval(c, &x)).collect());
        if !ea.is_empty() && !eb.is_empty() {
            let ca = u_content(&ea);
            let cb = u_content(&eb);
            let pa = u_div_int(&ea, &ca);
            let pb = u_div_int(&eb, &cb);
            if let Some(hq) = u_heu_gcd(&pa, &pb) {
                let c = ca.gcd(&cb);
                let h: BPoly = b_trim(hq.iter().map(|v| digits(v * &c, &x)).collect());
                if !h.is_empty() {
                    let h = b_int_primitive(&h);
                    if b_div_exact(a, &h).is_some() && b_div_exact(b, &h).is_some() {
                        return Some(h);
                    }
                }
            }
        }
        x = heu_next(&x);
    }
    None
}

fn b_int_content(a: &BPoly) -> BigInt {
    let mut g = BigInt::zero();
    for u in a {
        for c in u {
            g = g.gcd(c);
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

/// Divides out the integer content and makes the leading coefficient positive.
fn b_int_primitive(a: &BPoly) -> BPoly {
    let c = b_int_content(a);
    b_normalize_sign(a.iter().map(|u| u_div_int(u, &c)).collect())
}

/// Full gcd with positive leading coefficient.
fn b_gcd_fast(a: &BPoly, b: &BPoly) -> BPoly {
    let ca = b_int_content(a);
    let cb = b_int_content(b);
    let pa: BPoly = a.iter().map(|u| u_div_int(u, &ca)).collect();
    let pb: BPoly = b.iter().map(|u| u_div_int(u, &cb)).collect();
    match b_heu_gcd(&pa, &pb) {
        Some(h) => {
            let c = ca.gcd(&cb);
            h.iter().map(|u| u.iter().map(|v| v * &c).collect()).collect()
        }
        None => b_normalize_sign(b_gcd(a, b)),
    }
}

/// Shifts a nonzero Laurent polynomial into `Z[nu][q]`, returning the
/// monomial shift that was removed.
fn to_dense(p: &LaurentPoly) -> (Exponent, BPoly) {
    let (lo, hi) = p.exponent_box().expect("nonzero polynomial");
    let dq = (hi.0 - lo.0) as usize;
    let dn = (hi.1 - lo.1) as usize;
    let mut out: BPoly = vec![vec![BigInt::zero(); dn + 1]; dq + 1];
    for (e, c) in p.terms() {
        out[(e.0 - lo.0) as usize][(e.1 - lo.1) as usize] = c.clone();
    }
    let out = out.into_iter().map(u_trim).collect();
    (lo, b_trim(out))
}

fn from_dense(b: &BPoly, shift: Exponent) -> LaurentPoly {
    let mut terms = Vec::new();
    for (i, u) in b.iter().enumerate() {
        for (j, c) in u.iter().enumerate() {
            if !c.is_zero() {
                terms.push(((i as i64 + shift.0, j as i64 + shift.1), c.clone()));
            }
        }
    }
    LaurentPoly::from_terms(terms)
}

/// Gcd of two Laurent polynomials, as an ordinary polynomial with no
/// monomial factor and positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return LaurentPoly::zero(),
        (true, false) => return strip_unit(b),
        (false, true) => return strip_unit(a),
        _ => {}
    }
    if a.is_monomial() || b.is_monomial() {
        let ca = a.integer_content();
        let cb = b.integer_content();
        return LaurentPoly::constant(ca.gcd(&cb));
    }
    let (_, da) = to_dense(a);
    let (_, db) = to_dense(b);
    from_dense(&b_gcd_fast(&da, &db), (0, 0))
}

fn strip_unit(a: &LaurentPoly) -> LaurentPoly {
    let (_, d) = to_dense(a);
    from_dense(&b_normalize_sign(d), (0, 0))
}

/// Exact quotient `a / b` in the Laurent ring, or `None`.
pub fn div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if a.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let (sa, da) = to_dense(a);
    let (sb, db) = to_dense(b);
    let q = b_div_exact(&da, &db)?;
    Some(from_dense(&q, (sa.0 - sb.0, sa.1 - sb.1)))
}
