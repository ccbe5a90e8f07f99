//! The sequences l_i and b_i(t), memoized per field.

use std::sync::{Mutex, RwLock};

use crate::error::Result;
use crate::field::Field;
use crate::poly::APoly;
use crate::ratk::RatK;
use crate::tpoly::TPoly;

/// Append-only memo: `l[i] = l_i`, `b[i]` = coefficients of b_i in t (low to high).
pub struct SeqCache {
    field: Field,
    l: RwLock<Vec<APoly>>,
    b: RwLock<Vec<Vec<APoly>>>,
}

static CACHES: Mutex<Vec<&'static SeqCache>> = Mutex::new(Vec::new());

impl SeqCache {
    /// The shared cache of `field`.
    pub fn of(field: Field) -> &'static SeqCache {
        let mut all = CACHES.lock().unwrap();
        if let Some(c) = all.iter().find(|c| c.field == field) {
            return c;
        }
        let c: &'static SeqCache = Box::leak(Box::new(SeqCache {
            field,
            l: RwLock::new(vec![APoly::one(field)]),
            b: RwLock::new(vec![vec![APoly::one(field)]]),
        }));
        all.push(c);
        c
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// θ^{q^j}.
    pub fn theta_qpow(&self, j: u32) -> APoly {
        APoly::theta(self.field).frobenius(j)
    }

    /// l_i = (θ - θ^{q^i}) l_{i-1}, l_0 = 1.
    pub fn l(&self, i: u32) -> APoly {
        if let Some(x) = self.l.read().unwrap().get(i as usize) {
            return x.clone();
        }
        let mut l = self.l.write().unwrap();
        while l.len() <= i as usize {
            let k = l.len() as u32;
            let factor = &APoly::theta(self.field) - &self.theta_qpow(k);
            let next = &factor * l.last().unwrap();
            l.push(next);
        }
        l[i as usize].clone()
    }

    pub fn l_k(&self, i: u32) -> RatK {
        RatK::from(self.l(i))
    }

    /// l_i^{-1}.
    pub fn l_inv(&self, i: u32) -> RatK {
        RatK::new(APoly::one(self.field), self.l(i)).expect("l_i is nonzero")
    }

    /// l_i / l_j = ∏_{j<m≤i} (θ - θ^{q^m}) for i ≥ j.
    pub fn l_quotient(&self, i: u32, j: u32) -> APoly {
        assert!(i >= j, "l_i / l_j needs i >= j");
        (j + 1..=i).fold(APoly::one(self.field), |acc, m| &acc * &(&APoly::theta(self.field) - &self.theta_qpow(m)))
    }

    /// Coefficients in t of b_i(t) = ∏_{j<i} (t - θ^{q^j}).
    pub fn b_coeffs(&self, i: u32) -> Vec<APoly> {
        if let Some(x) = self.b.read().unwrap().get(i as usize) {
            return x.clone();
        }
        let mut b = self.b.write().unwrap();
        while b.len() <= i as usize {
            let k = b.len() as u32;
            let root = self.theta_qpow(k - 1);
            let prev = b.last().unwrap();
            // (t - r) Σ c_j t^j
            let mut next = vec![APoly::zero(self.field); prev.len() + 1];
            for (j, c) in prev.iter().enumerate() {
                next[j + 1] = &next[j + 1] + c;
                next[j] = &next[j] - &(c * &root);
            }
            b.push(next);
        }
        b[i as usize].clone()
    }

    /// b_i(t_var) in arity `s`.
    pub fn b(&self, i: u32, s: usize, var: usize) -> Result<TPoly> {
        let coeffs = self.b_coeffs(i);
        let mut out = TPoly::zero(self.field, s);
        let t = TPoly::var(self.field, s, var)?;
        for c in coeffs.iter().rev() {
            out = &(&out * &t) + &TPoly::from_apoly(c.clone(), s);
        }
        Ok(out)
    }

    /// b_i(x) for x ∈ A.
    pub fn b_at(&self, i: u32, x: &APoly) -> APoly {
        (0..i).fold(APoly::one(self.field), |acc, j| &acc * &(x - &self.theta_qpow(j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Deg;
    use proptest::prelude::*;

    #[test]
    fn first_terms() {
        let f = Field::new(3).unwrap();
        let c = SeqCache::of(f);
        assert_eq!(c.l(0), APoly::one(f));
        assert_eq!(c.l(1), APoly::parse(f, "θ - θ^3").unwrap());
        assert_eq!(c.l(2), APoly::parse(f, "(θ - θ^3)*(θ - θ^9)").unwrap());
        assert_eq!(c.b(2, 1, 1).unwrap(), TPoly::parse(f, 1, "(t1 - θ)*(t1 - θ^3)").unwrap());
        assert_eq!(c.b(0, 2, 2).unwrap(), TPoly::one(f, 2));
        assert_eq!(c.b_at(1, &APoly::parse(f, "θ^9").unwrap()), APoly::parse(f, "θ^9 - θ").unwrap());
        assert!(std::ptr::eq(c, SeqCache::of(f)));
    }

    proptest! {
        #[test]
        fn recurrences_and_degrees(qi in 0usize..3, i in 1u32..7) {
            let f = Field::new([3, 4, 5][qi]).unwrap();
            let q = f.q() as u64;
            let c = SeqCache::of(f);
            let th = APoly::theta(f);
            prop_assert_eq!(c.l(i), &(&th - &c.theta_qpow(i)) * &c.l(i - 1));
            let expected: u64 = (1..=i).map(|k| q.pow(k)).sum();
            prop_assert_eq!(c.l(i).deg(), Deg::Finite(expected));
            let step = &TPoly::var(f, 1, 1).unwrap() - &TPoly::from_apoly(c.theta_qpow(i - 1), 1);
            prop_assert_eq!(c.b(i, 1, 1).unwrap(), &c.b(i - 1, 1, 1).unwrap() * &step);
            prop_assert_eq!(c.l_quotient(i, i - 1), &th - &c.theta_qpow(i));
        }
    }
}
