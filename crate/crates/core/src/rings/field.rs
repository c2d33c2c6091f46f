//! Finite fields `F_q` as polynomial rings `F_p[a]/(m)`.
//!
//! An element `c_0 + c_1 a + … + c_{k-1} a^{k-1}` has index `Σ c_i p^i`.

use crate::error::{Error, Result};

/// Conway polynomials, coefficients from the constant term up, leading 1 omitted.
const CONWAY: &[(usize, usize, &[usize])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (5, 4, &[2, 4, 4, 0]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
    (7, 4, &[3, 4, 5, 0]),
];

pub(crate) fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// The defining polynomial used for `F_{p^k}` (lower coefficients, monic).
pub fn defining_polynomial(p: usize, k: usize) -> Vec<usize> {
    if let Some((_, _, c)) = CONWAY.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
        return c.to_vec();
    }
    // smallest monic irreducible by base-p encoding of the lower coefficients
    (0..p.pow(k as u32))
        .map(|m| digits(m, p, k))
        .find(|c| is_irreducible(c, p))
        .expect("irreducible polynomials exist in every degree")
}

fn digits(mut m: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = m % p;
            m /= p;
            d
        })
        .collect()
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `m` (full coefficient list).
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
        r = trim(r);
    }
    r
}

/// `c` lists the lower coefficients of a monic polynomial of degree `c.len()`.
pub fn is_irreducible(c: &[usize], p: usize) -> bool {
    let k = c.len();
    let mut full = c.to_vec();
    full.push(1);
    for d in 1..=k / 2 {
        for m in 0..p.pow(d as u32) {
            let mut f = digits(m, p, d);
            f.push(1);
            if poly_rem(&full, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

pub(crate) struct FieldTables {
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
    pub names: Vec<String>,
}

pub(crate) fn field_tables(q: usize) -> Result<FieldTables> {
    let (p, k) =
        prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
    let modulus = defining_polynomial(p, k);
    let coeffs: Vec<Vec<usize>> = (0..q).map(|m| digits(m, p, k)).collect();
    let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * p + d);
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    // multiplication by a, as a linear map on coefficient vectors
    let times_a = |c: &[usize]| -> Vec<usize> {
        let top = c[k - 1];
        let mut out = vec![0; k];
        for i in (1..k).rev() {
            out[i] = c[i - 1];
        }
        for i in 0..k {
            out[i] = (out[i] + p * p - top * modulus[i] % p) % p;
        }
        out
    };
    for x in 0..q {
        for y in 0..q {
            let s: Vec<usize> = (0..k).map(|i| (coeffs[x][i] + coeffs[y][i]) % p).collect();
            add[x * q + y] = encode(&s) as u32;
        }
        // x·y = Σ y_i (a^i x)
        let mut powers = Vec::with_capacity(k);
        let mut cur = coeffs[x].clone();
        for _ in 0..k {
            powers.push(cur.clone());
            cur = times_a(&cur);
        }
        for y in 0..q {
            let mut s = vec![0; k];
            for (i, pw) in powers.iter().enumerate() {
                let c = coeffs[y][i];
                if c != 0 {
                    for j in 0..k {
                        s[j] = (s[j] + c * pw[j]) % p;
                    }
                }
            }
            mul[x * q + y] = encode(&s) as u32;
        }
    }
    let names = coeffs.iter().map(|c| poly_name(c)).collect();
    Ok(FieldTables { add, mul, names })
}

fn poly_name(c: &[usize]) -> String {
    let mut terms = Vec::new();
    for (i, &d) in c.iter().enumerate().rev() {
        if d == 0 {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        };
        terms.push(match (d, i) {
            (_, 0) => d.to_string(),
            (1, _) => var,
            _ => format!("{d}{var}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}
