//! Arithmetic in GF(p^n) and Gram-matrix trace forms of F_{q^m}/F_q.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::gw::arith::prime_power;
use crate::{Error, Result};

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::gw::arith::mod_pow(a, (p - 2) as u128, p)
}

fn poly_rem(mut a: Poly, b: &Poly, p: u64) -> Poly {
    let b = trim(b.clone());
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    a = trim(a);
    while a.len() > db {
        let shift = a.len() - 1 - db;
        let f = a[a.len() - 1] * lead_inv % p;
        for (i, c) in b.iter().enumerate() {
            let idx = i + shift;
            a[idx] = (a[idx] + p - f * c % p) % p;
        }
        a = trim(a);
    }
    a
}

fn poly_mul_mod(a: &Poly, b: &Poly, f: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(out, f, p)
}

fn poly_gcd(a: Poly, b: Poly, p: u64) -> Poly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a monic polynomial of degree n over F_p.
fn is_irreducible(f: &Poly, p: u64) -> bool {
    let n = f.len() - 1;
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    for _ in 0..n / 2 {
        // h <- h^p mod f
        let mut acc: Poly = vec![1];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mul_mod(&acc, &base, f, p);
            }
            base = poly_mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(f.clone(), diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// GF(p^n) realized as F_p[x]/(f) for the first irreducible monic f in a fixed order.
#[derive(Debug)]
pub struct GaloisField {
    p: u64,
    n: usize,
    modulus: Poly,
}

/// Field elements: coefficient vectors of length n in the basis 1, x, ..., x^{n-1}.
pub type Elem = Vec<u64>;

impl GaloisField {
    pub fn new(p: u64, n: usize) -> Self {
        assert!(n >= 1);
        let mut idx: u128 = 0;
        loop {
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut k = idx;
            for _ in 0..n {
                coeffs.push((k % p as u128) as u64);
                k /= p as u128;
            }
            coeffs.push(1);
            idx += 1;
            if n > 1 && coeffs[0] == 0 {
                continue;
            }
            if is_irreducible(&coeffs, p) {
                return GaloisField {
                    p,
                    n,
                    modulus: coeffs,
                };
            }
        }
    }

    /// Shared instance for GF(p^n).
    pub fn cached(p: u64, n: usize) -> Arc<GaloisField> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<GaloisField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&(p, n)) {
            return f.clone();
        }
        let f = Arc::new(GaloisField::new(p, n));
        cache.lock().unwrap().entry((p, n)).or_insert(f).clone()
    }

    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.n as u32)
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.n]
    }

    pub fn one(&self) -> Elem {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    /// The class of x; for n = 1 this is the residue of 0 and generates nothing.
    pub fn gen(&self) -> Elem {
        if self.n == 1 {
            return vec![(self.p - self.modulus[0]) % self.p];
        }
        let mut e = self.zero();
        e[1] = 1;
        e
    }

    /// The element whose coefficients are the base-p digits of `k`.
    pub fn from_index(&self, mut k: u128) -> Elem {
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = (k % self.p as u128) as u64;
            k /= self.p as u128;
        }
        e
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|c| *c == 0)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.p;
        let n = self.n;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // Reduce with x^n = -sum modulus[i] x^i.
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let idx = k - n + i;
                prod[idx] = (prod[idx] + p - c * self.modulus[i] % p) % p;
            }
        }
        prod.truncate(n);
        prod
    }

    pub fn pow(&self, a: &Elem, mut e: u128) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion in the subfield of order `q` (the element must lie in it).
    pub fn is_square_in(&self, a: &Elem, q: u128) -> bool {
        self.pow(a, (q - 1) / 2) == self.one()
    }

    /// First non-square of the whole field in index order.
    pub fn nonsquare(&self) -> Elem {
        let order = self.order().expect("field order fits in u128");
        (1..order)
            .map(|k| self.from_index(k))
            .find(|e| !self.is_square_in(e, order))
            .expect("odd order fields have non-squares")
    }
}

/// Trace-form data of `(x, y) -> Tr(e x y)` on F_{q^m}/F_q: the number of
/// non-square diagonal entries in the normal form (0 or 1).
///
/// `e` is 1 when `nonsquare` is false and a non-square of F_{q^m} otherwise.
/// Frobenius acts on the roots as an m-cycle, so the discriminant is a square
/// exactly when m is odd, and scaling by `e` multiplies it by `N(e)`.
pub fn trace_form_nonsquares(q: u64, m: u32, nonsquare: bool) -> Result<u32> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if m == 0 {
        return Err(Error::Invalid("extension of degree 0".into()));
    }
    Ok(u32::from(m.is_multiple_of(2) ^ nonsquare))
}

/// [`trace_form_nonsquares`] by diagonalizing the Gram matrix in F_{q^m}.
pub fn gram_trace_form_nonsquares(q: u64, m: u32, nonsquare: bool) -> Result<u32> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let n = (e * m) as usize;
    let too_big = || Error::UnsupportedExtension(format!("F_{{{q}^{m}}} is too large"));
    if (p as u128).checked_pow(n as u32).is_none() {
        return Err(too_big());
    }
    let field = GaloisField::cached(p, n);
    let m = m as usize;
    let scale = if nonsquare { field.nonsquare() } else { field.one() };
    if m == 1 {
        return Ok(u32::from(!field.is_square_in(&scale, q as u128)));
    }
    // t[k] = Tr(scale * x^k) = sum_i frob^i(scale) * frob^i(x)^k
    let x = field.gen();
    let mut t = vec![field.zero(); 2 * m - 1];
    let mut conj_x = x.clone();
    let mut conj_s = scale.clone();
    for _ in 0..m {
        let mut r = conj_s.clone();
        for tk in t.iter_mut() {
            *tk = field.add(tk, &r);
            r = field.mul(&r, &conj_x);
        }
        conj_x = field.pow(&conj_x, q as u128);
        conj_s = field.pow(&conj_s, q as u128);
    }
    let mut gram: Vec<Vec<Elem>> = (0..m)
        .map(|i| (0..m).map(|j| t[i + j].clone()).collect())
        .collect();
    let diag = diagonalize(&field, &mut gram, q as u128)?;
    Ok(diag
        .iter()
        .filter(|a| !field.is_square_in(a, q as u128))
        .count() as u32)
}

/// Congruence diagonalization of a symmetric matrix over the subfield F_q.
fn diagonalize(f: &GaloisField, a: &mut [Vec<Elem>], q: u128) -> Result<Vec<Elem>> {
    let m = a.len();
    let mut diag = Vec::with_capacity(m);
    for k in 0..m {
        if f.is_zero(&a[k][k]) {
            if let Some(l) = (k + 1..m).find(|&l| !f.is_zero(&a[l][l])) {
                a.swap(k, l);
                for row in a.iter_mut() {
                    row.swap(k, l);
                }
            } else if let Some(l) = (k + 1..m).find(|&l| !f.is_zero(&a[k][l])) {
                // Replace e_k by e_k + e_l; the new diagonal entry is 2 a_kl.
                for j in 0..m {
                    let v = f.add(&a[k][j], &a[l][j]);
                    a[k][j] = v;
                }
                for row in a.iter_mut() {
                    let v = f.add(&row[k], &row[l]);
                    row[k] = v;
                }
            } else {
                return Err(Error::Invalid("degenerate trace form".into()));
            }
        }
        let pivot = a[k][k].clone();
        let inv = f.pow(&pivot, q - 2);
        for i in k + 1..m {
            if f.is_zero(&a[i][k]) {
                continue;
            }
            let factor = f.mul(&a[i][k], &inv);
            for j in k + 1..m {
                let v = f.sub(&a[i][j], &f.mul(&factor, &a[k][j]));
                a[i][j] = v;
            }
        }
        for i in k + 1..m {
            a[i][k] = f.zero();
            a[k][i] = f.zero();
        }
        diag.push(pivot);
    }
    Ok(diag)
}
