use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Sparse exponent list `(index, exponent)`, strictly increasing in index,
/// with no zero exponents.
pub type Exponents = SmallVec<[(u32, u32); 6]>;

/// Merges two sparse exponent lists by adding exponents.
pub(crate) fn merge_add(a: &[(u32, u32)], b: &[(u32, u32)]) -> Exponents {
    let mut out = Exponents::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Adds `delta` to the exponent at `index`, dropping the entry if it hits zero.
/// Panics if an exponent would go negative.
pub(crate) fn bump(exps: &mut Exponents, index: u32, delta: i64) {
    match exps.binary_search_by_key(&index, |&(j, _)| j) {
        Ok(pos) => {
            let e = exps[pos].1 as i64 + delta;
            assert!(e >= 0, "negative exponent");
            if e == 0 {
                exps.remove(pos);
            } else {
                exps[pos].1 = e as u32;
            }
        }
        Err(pos) => {
            assert!(delta >= 0, "negative exponent");
            if delta > 0 {
                exps.insert(pos, (index, delta as u32));
            }
        }
    }
}

pub(crate) fn exponent_of(exps: &[(u32, u32)], index: u32) -> u32 {
    exps.binary_search_by_key(&index, |&(j, _)| j).map(|p| exps[p].1).unwrap_or(0)
}

/// A monomial `γ^gamma · q^q · h̄₃^hbar3 · ∏ h_j^{e_j}` in the unscaled
/// prolongation ring, where `q = h₃^{1/3}` (so `h₃` itself is `q³`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    order: u32,
    gamma: i32,
    q: i32,
    hbar3: u32,
    h: Exponents,
}

impl Monomial {
    pub fn one() -> Self {
        Self { order: 0, gamma: 0, q: 0, hbar3: 0, h: Exponents::new() }
    }

    /// Builds a monomial from unsorted `(j, e)` pairs with `j ≥ 4`. Repeated
    /// indices accumulate; zero exponents are dropped.
    pub fn new(gamma: i32, q: i32, hbar3: u32, h: &[(u32, u32)]) -> Self {
        let mut exps = Exponents::new();
        for &(j, e) in h {
            assert!(j >= 4, "h_j variables start at j = 4 (h_3 is q^3)");
            bump(&mut exps, j, e as i64);
        }
        Self::from_parts(gamma, q, hbar3, exps)
    }

    pub(crate) fn from_parts(gamma: i32, q: i32, hbar3: u32, h: Exponents) -> Self {
        let order = h.iter().map(|&(j, e)| j * e).sum();
        Self { order, gamma, q, hbar3, h }
    }

    pub fn gamma(&self) -> i32 {
        self.gamma
    }

    pub fn q(&self) -> i32 {
        self.q
    }

    pub fn hbar3(&self) -> u32 {
        self.hbar3
    }

    pub fn h(&self) -> &[(u32, u32)] {
        &self.h
    }

    pub fn h_exponent(&self, j: u32) -> u32 {
        exponent_of(&self.h, j)
    }

    /// `Σ j·e_j` over the `h_j` factors.
    pub fn total_order(&self) -> u32 {
        self.order
    }

    /// Largest `j` with a nonzero `h_j` exponent.
    pub fn max_index(&self) -> Option<u32> {
        self.h.last().map(|&(j, _)| j)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            order: self.order + other.order,
            gamma: self.gamma + other.gamma,
            q: self.q + other.q,
            hbar3: self.hbar3 + other.hbar3,
            h: merge_add(&self.h, &other.h),
        }
    }

    /// Reciprocal, defined only for monomials without `h̄₃` or `h_j` factors.
    pub fn try_inv(&self) -> Option<Self> {
        (self.hbar3 == 0 && self.h.is_empty()).then(|| Self {
            order: 0,
            gamma: -self.gamma,
            q: -self.q,
            hbar3: 0,
            h: Exponents::new(),
        })
    }

    pub(crate) fn with_gamma_q(&self, dgamma: i32, dq: i32) -> Self {
        let mut m = self.clone();
        m.gamma += dgamma;
        m.q += dq;
        m
    }

    pub(crate) fn with_h_bump(&self, j: u32, delta: i64) -> Self {
        let mut h = self.h.clone();
        bump(&mut h, j, delta);
        Self::from_parts(self.gamma, self.q, self.hbar3, h)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then(self.q.cmp(&other.q))
            .then(self.gamma.cmp(&other.gamma))
            .then(self.hbar3.cmp(&other.hbar3))
            .then_with(|| self.h.as_slice().cmp(other.h.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, first: &mut bool, name: &str, e: i64) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{e}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write_power(f, &mut first, "g", self.gamma as i64)?;
        write_power(f, &mut first, "q", self.q as i64)?;
        write_power(f, &mut first, "hb3", self.hbar3 as i64)?;
        for &(j, e) in &self.h {
            write_power(f, &mut first, &format!("h{j}"), e as i64)?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
