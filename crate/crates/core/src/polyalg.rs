//! Laurent polynomial arithmetic in the four formal variables (u, t, w, p).
//!
//! Terms are kept in a canonical sorted map keyed by exponent 4-tuples, with
//! no zero coefficients stored, so equality is structural. The variable order
//! is fixed as (u, t, w, p) throughout; the mirror substitution swaps the w
//! and p slots, so call sites name the slots rather than positions.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::num::Ring;

pub const VARS: [char; 4] = ['u', 't', 'w', 'p'];

/// Exponent vector (e_u, e_t, e_w, e_p); entries may be negative.
pub type Expo = [i64; 4];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent<C: Ring> {
    terms: BTreeMap<Expo, C>,
}

impl<C: Ring> Default for Laurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Ring> Laurent<C> {
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Laurent::monomial(C::one(), [0, 0, 0, 0])
    }

    pub fn monomial(coeff: C, expo: Expo) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(expo, coeff);
        }
        Laurent { terms }
    }

    /// The single variable u, t, w or p (slot 0..4).
    pub fn var(slot: usize) -> Self {
        let mut e = [0i64; 4];
        e[slot] = 1;
        Laurent::monomial(C::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, expo: &Expo) -> C {
        self.terms.get(expo).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, expo: Expo, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(expo).or_insert_with(C::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&expo);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Laurent::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Inverse when `self` is a single term with unit coefficient.
    fn invert_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.clone() * c.clone() != C::one() {
            return None; // only units +-1 are invertible over the integers
        }
        Some(Laurent::monomial(c.clone(), [-e[0], -e[1], -e[2], -e[3]]))
    }

    /// Simultaneous substitution of one image polynomial per variable slot.
    ///
    /// A variable occurring with a negative exponent needs an invertible
    /// image; anything other than a unit monomial is rejected.
    pub fn substitute(&self, images: &[Self; 4]) -> Result<Self> {
        let mut inverses: [Option<Self>; 4] = [None, None, None, None];
        for slot in 0..4 {
            if self.terms.keys().any(|e| e[slot] < 0) {
                inverses[slot] = Some(images[slot].invert_monomial().ok_or(
                    Error::NonMonomialNegativePower {
                        variable: VARS[slot],
                    },
                )?);
            }
        }
        let mut out = Laurent::zero();
        for (e, c) in &self.terms {
            let mut term = Laurent::monomial(c.clone(), [0, 0, 0, 0]);
            for slot in 0..4 {
                let base = if e[slot] >= 0 {
                    images[slot].clone()
                } else {
                    inverses[slot].clone().unwrap()
                };
                term = term.mul(&base.pow(e[slot].unsigned_abs() as u32));
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// The mirror-side change of variables:
    /// substitute u -> u^-1 t^-2, t -> t, w -> p, p -> w, then multiply by u^n t^n.
    pub fn mirror_transform(&self, n: u32) -> Result<Self> {
        let images = [
            Laurent::monomial(C::one(), [-1, -2, 0, 0]), // u slot
            Laurent::var(1),                             // t slot
            Laurent::var(3),                             // w slot receives p
            Laurent::var(2),                             // p slot receives w
        ];
        let shifted = self.substitute(&images)?;
        Ok(shifted.mul(&Laurent::monomial(C::one(), [n as i64, n as i64, 0, 0])))
    }

    /// Evaluate at integer points given as constant polynomials per slot.
    pub fn evaluate(&self, point: [C; 4]) -> Result<C> {
        let images = point.map(|c| Laurent::monomial(c, [0, 0, 0, 0]));
        let v = self.substitute(&images)?;
        Ok(v.coeff(&[0, 0, 0, 0]))
    }
}

impl<C: Ring> fmt::Display for Laurent<C> {
    /// Canonical sorted form, descending lexicographic in (e_u, e_t, e_w, e_p),
    /// e.g. `u^2*t^2*w^2 + 2*u*t*w*p + p^2`. Bit-exact across runs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(format!("{mag}"));
            }
            for slot in 0..4 {
                match e[slot] {
                    0 => {}
                    1 => factors.push(VARS[slot].to_string()),
                    k => factors.push(format!("{}^{}", VARS[slot], k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
