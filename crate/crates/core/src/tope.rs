//! Sign vectors of full-dimensional regions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(signum: i32) -> Option<Sign> {
        match signum {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// Product of signs.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A vector in `{+,-}^m`, packed one bit per hyperplane (set bit = `-`).
///
/// Topes order lexicographically with `+` before `-`, which is the byte order of
/// their `+`/`-` string form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tope {
    len: usize,
    bits: Box<[u64]>,
}

impl Tope {
    pub fn all_plus(len: usize) -> Tope {
        Tope {
            len,
            bits: vec![0; len.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn from_signs(signs: &[Sign]) -> Tope {
        let mut t = Tope::all_plus(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            if s == Sign::Minus {
                t.flip_in_place(i);
            }
        }
        t
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        assert!(i < self.len, "sign index {i} out of range {}", self.len);
        if self.bits[i / 64] >> (i % 64) & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        if self.get(i) != s {
            self.flip_in_place(i);
        }
    }

    pub fn flip_in_place(&mut self, i: usize) {
        assert!(i < self.len, "sign index {i} out of range {}", self.len);
        self.bits[i / 64] ^= 1 << (i % 64);
    }

    pub fn flipped(&self, i: usize) -> Tope {
        let mut t = self.clone();
        t.flip_in_place(i);
        t
    }

    /// The antipodal tope `-t`.
    pub fn negated(&self) -> Tope {
        let mut t = self.clone();
        for w in t.bits.iter_mut() {
            *w = !*w;
        }
        t.clear_tail();
        t
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    /// Componentwise product; reorients `self` so that `base` becomes all `+`.
    pub fn times(&self, base: &Tope) -> Tope {
        assert_eq!(self.len, base.len);
        Tope {
            len: self.len,
            bits: self.bits.iter().zip(base.bits.iter()).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn minus_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Keeps the listed coordinates, in the given order.
    pub fn select(&self, keep: &[usize]) -> Tope {
        let mut t = Tope::all_plus(keep.len());
        for (k, &i) in keep.iter().enumerate() {
            if self.get(i) == Sign::Minus {
                t.flip_in_place(k);
            }
        }
        t
    }

    /// Block concatenation `(self, other)`.
    pub fn concat(&self, other: &Tope) -> Tope {
        let mut t = Tope::all_plus(self.len + other.len);
        for i in (0..self.len).filter(|&i| self.get(i) == Sign::Minus) {
            t.flip_in_place(i);
        }
        for i in (0..other.len).filter(|&i| other.get(i) == Sign::Minus) {
            t.flip_in_place(self.len + i);
        }
        t
    }

    pub fn hamming(&self, other: &Tope) -> usize {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }
}

/// The unique position where two topes differ, if they differ in exactly one.
pub fn adjacency(t1: &Tope, t2: &Tope) -> Result<Option<usize>> {
    if t1.len != t2.len {
        return Err(Error::LengthMismatch(t1.len, t2.len));
    }
    let mut found = None;
    for (w, (a, b)) in t1.bits.iter().zip(t2.bits.iter()).enumerate() {
        let x = a ^ b;
        if x == 0 {
            continue;
        }
        if found.is_some() || x.count_ones() > 1 {
            return Ok(None);
        }
        found = Some(w * 64 + x.trailing_zeros() as usize);
    }
    Ok(found)
}

impl Ord for Tope {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.bits.iter().zip(other.bits.iter()) {
            let x = a ^ b;
            if x != 0 {
                let low = x & x.wrapping_neg();
                return if a & low == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Tope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.signs().map(Sign::as_char).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Tope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tope({self})")
    }
}

impl FromStr for Tope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tope> {
        let signs = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                _ => Err(Error::Parse {
                    line: 0,
                    message: format!("bad sign `{c}` in tope `{s}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tope::from_signs(&signs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tope {
        s.parse().unwrap()
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(adjacency(&t("+++"), &t("+-+")).unwrap(), Some(1));
        assert_eq!(adjacency(&t("++"), &t("--")).unwrap(), None);
        assert_eq!(adjacency(&t("+-+"), &t("+-+")).unwrap(), None);
        assert!(matches!(
            adjacency(&t("++"), &t("+++")),
            Err(Error::LengthMismatch(2, 3))
        ));
    }

    #[test]
    fn ordering_matches_strings() {
        let mut v = [t("-+-"), t("++-"), t("+-+"), t("---"), t("+++")];
        let mut s: Vec<String> = v.iter().map(ToString::to_string).collect();
        v.sort();
        s.sort();
        assert_eq!(v.iter().map(ToString::to_string).collect::<Vec<_>>(), s);
    }

    #[test]
    fn long_topes() {
        let mut a = Tope::all_plus(130);
        a.flip_in_place(129);
        a.flip_in_place(3);
        assert_eq!(a.minus_count(), 2);
        let n = a.negated();
        assert_eq!(n.minus_count(), 128);
        assert_eq!(adjacency(&a, &a.flipped(70)).unwrap(), Some(70));
        assert_eq!(a.to_string().parse::<Tope>().unwrap(), a);
    }

    #[test]
    fn select_and_concat() {
        let a = t("+-+-");
        assert_eq!(a.select(&[1, 3]), t("--"));
        assert_eq!(a.concat(&t("-+")), t("+-+--+"));
        assert_eq!(a.times(&t("+--+")), t("++--"));
    }
}
