//! Exact scalars: rationals and elements of a single real quadratic field `Q(√d)`.
//!
//! Rationals keep an `i64` fast path and promote to big integers on overflow, so
//! the hot loops of the region walk stay allocation-free on the usual root systems.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which field the entries of an arrangement live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    /// `Q(√d)` for a square-free `d > 1`.
    Quadratic(u32),
}

impl FieldTag {
    /// The smallest field containing both, if there is one.
    pub fn join(self, other: FieldTag) -> Option<FieldTag> {
        match (self, other) {
            (FieldTag::Rational, f) | (f, FieldTag::Rational) => Some(f),
            (FieldTag::Quadratic(a), FieldTag::Quadratic(b)) if a == b => Some(self),
            _ => None,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "rational"),
            FieldTag::Quadratic(d) => write!(f, "quadratic {d}"),
        }
    }
}

#[derive(Clone)]
enum Repr {
    /// Reduced, `den > 0`.
    Small(i64, i64),
    /// Reduced, `den > 0`, and does not fit the small representation.
    Big(Box<(BigInt, BigInt)>),
}

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone)]
pub struct Rational(Repr);

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// `num/den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = gcd_i128(num, den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new((BigInt::from(n), BigInt::from(d))))),
        }
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Self::normalize_big(n, d)
    }

    fn normalize_big(n: BigInt, d: BigInt) -> Self {
        match (n.to_i64(), d.to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new((n, d)))),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.0.clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.1.clone(),
        }
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.1.is_one(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.0.is_positive() {
                    1
                } else if b.0.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                Self::from_i128(*d as i128, *n as i128)
            }
            Repr::Big(b) => Self::from_big(b.1.clone(), b.0.clone()),
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Rational(Repr::Small(s, 1));
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y), Some(z)) = (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                if let Some(n) = x.checked_add(y) {
                    return Self::from_i128(n, z);
                }
            }
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        Self::from_big(a * &d + c * &b, b * d)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Rational(Repr::Small(p, 1));
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(n), Some(z)) = (a.checked_mul(c), b.checked_mul(d)) {
                return Self::from_i128(n, z);
            }
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        Self::from_big(a * c, b * d)
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Self::from_big(-BigInt::from(*n), BigInt::from(*d)),
            },
            Repr::Big(b) => Self::normalize_big(-b.0.clone(), b.1.clone()),
        }
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                b.0.hash(state);
                b.1.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            return (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128));
        }
        let (a, b) = self.to_big();
        let (c, d) = other.to_big();
        (a * d).cmp(&(c * b))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self.add_ref(&rhs.neg_ref())
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        self.mul_ref(rhs)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.mul_ref(&rhs.recip())
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.1.is_one() => write!(f, "{}", b.0),
            Repr::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            message: format!("malformed rational `{s}`"),
        };
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(num, den))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quadratic {
    a: Rational,
    b: Rational,
    d: u32,
}

/// An exact real number: a rational, or `a + b√d` with `b ≠ 0` and `d` square-free.
///
/// Quadratic values whose irrational part vanishes are stored as rationals, so
/// equality and hashing are structural.
///
/// The arithmetic operators panic when both operands carry different radicands;
/// arrangements are validated to live in one field before any arithmetic happens.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Quadratic(Box<Quadratic>),
}

pub fn is_square_free(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= d as u64 {
        if (d as u64).is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(Rational::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(Rational::new(num, den))
    }

    /// `a + b√d`. Fails unless `d` is square-free and greater than one.
    pub fn quadratic(a: Rational, b: Rational, d: u32) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::UnsupportedField(format!(
                "radicand {d} is not a square-free integer > 1"
            )));
        }
        Ok(Self::quad_unchecked(a, b, d))
    }

    fn quad_unchecked(a: Rational, b: Rational, d: u32) -> Self {
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Quadratic(Box::new(Quadratic { a, b, d }))
        }
    }

    /// `√d` itself.
    pub fn sqrt(d: u32) -> Result<Self> {
        Self::quadratic(Rational::zero(), Rational::one(), d)
    }

    pub fn field(&self) -> FieldTag {
        match self {
            Scalar::Rational(_) => FieldTag::Rational,
            Scalar::Quadratic(q) => FieldTag::Quadratic(q.d),
        }
    }

    /// Rational part `a` of `a + b√d`.
    pub fn rational_part(&self) -> Rational {
        match self {
            Scalar::Rational(r) => r.clone(),
            Scalar::Quadratic(q) => q.a.clone(),
        }
    }

    /// Irrational coefficient `b` of `a + b√d` (zero for rationals).
    pub fn irrational_part(&self) -> Rational {
        match self {
            Scalar::Rational(_) => Rational::zero(),
            Scalar::Quadratic(q) => q.b.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Quadratic(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(r) => r.signum(),
            Scalar::Quadratic(q) => {
                let sa = q.a.signum();
                let sb = q.b.signum();
                if sa >= 0 && sb >= 0 {
                    return (sa + sb).signum();
                }
                if sa <= 0 && sb <= 0 {
                    return -(sa.abs() + sb.abs()).signum();
                }
                // opposite signs: compare a² with b²d
                let a2 = &q.a * &q.a;
                let b2d = &(&q.b * &q.b) * &Rational::from_int(q.d as i64);
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("√d is irrational"),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    fn radicand(x: &Scalar, y: &Scalar) -> Option<u32> {
        match (x, y) {
            (Scalar::Quadratic(p), Scalar::Quadratic(q)) => {
                assert_eq!(p.d, q.d, "mixing Q(√{}) and Q(√{})", p.d, q.d);
                Some(p.d)
            }
            (Scalar::Quadratic(p), _) | (_, Scalar::Quadratic(p)) => Some(p.d),
            _ => None,
        }
    }

    /// Field-checked addition; fails instead of panicking on mixed radicands.
    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.field().join(other.field()).ok_or_else(|| mismatch(self, other))?;
        Ok(self + other)
    }

    /// Field-checked multiplication.
    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.field().join(other.field()).ok_or_else(|| mismatch(self, other))?;
        Ok(self * other)
    }

    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Quadratic(q) => {
                // (a - b√d) / (a² - b²d)
                let norm = &(&q.a * &q.a) - &(&(&q.b * &q.b) * &Rational::from_int(q.d as i64));
                let inv = norm.recip();
                Self::quad_unchecked(&q.a * &inv, -&(&q.b * &inv), q.d)
            }
        }
    }
}

fn mismatch(x: &Scalar, y: &Scalar) -> Error {
    Error::FieldMismatch(format!("{} vs {}", x.field(), y.field()))
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => {
                let d = Scalar::radicand(self, rhs).unwrap();
                Scalar::quad_unchecked(
                    &self.rational_part() + &rhs.rational_part(),
                    &self.irrational_part() + &rhs.irrational_part(),
                    d,
                )
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            _ => self + &(-rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => {
                let d = Scalar::radicand(self, rhs).unwrap();
                let (a, b) = (self.rational_part(), self.irrational_part());
                let (c, e) = (rhs.rational_part(), rhs.irrational_part());
                let rd = Rational::from_int(d as i64);
                Scalar::quad_unchecked(&(&a * &c) + &(&(&b * &e) * &rd), &(&a * &e) + &(&b * &c), d)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x / y),
            _ => self * &rhs.recip(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quadratic(q) => Scalar::quad_unchecked(-&q.a, -&q.b, q.d),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (self, other) {
            return x.cmp(y);
        }
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `p` or `p/q`; quadratic values as `a+b*sqrt` / `a-b*sqrt`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Quadratic(q) => {
                if q.b.signum() < 0 {
                    write!(f, "{}-{}*sqrt", q.a, q.b.abs())
                } else {
                    write!(f, "{}+{}*sqrt", q.a, q.b)
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Quadratic(q) => write!(f, "{self}[d={}]", q.d),
            _ => write!(f, "{self}"),
        }
    }
}

/// Parses a coefficient in the arrangement file grammar: `p/q`, `p/q+r/s*sqrt`,
/// `r/s*sqrt`, `sqrt`, `-sqrt`. `field` supplies the radicand for `sqrt`.
pub fn parse_scalar(text: &str, field: FieldTag) -> std::result::Result<Scalar, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty coefficient".into());
    }
    let Some(pos) = s.find("sqrt") else {
        return s
            .parse::<Rational>()
            .map(Scalar::Rational)
            .map_err(|_| format!("malformed coefficient `{s}`"));
    };
    let d = match field {
        FieldTag::Quadratic(d) => d,
        FieldTag::Rational => {
            return Err(format!("`{s}` uses sqrt but the field is rational"));
        }
    };
    if pos + 4 != s.len() {
        return Err(format!("malformed coefficient `{s}`"));
    }
    let head = &s[..pos];
    // head is "[a](+|-)[b*]" or "[b*]"
    let head = head.strip_suffix('*').unwrap_or(head);
    let split = head
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (a_txt, b_txt) = match split {
        Some(i) if !head[..i].ends_with('/') => (&head[..i], &head[i..]),
        _ => ("", head),
    };
    let a = if a_txt.is_empty() {
        Rational::zero()
    } else {
        a_txt
            .parse::<Rational>()
            .map_err(|_| format!("malformed coefficient `{s}`"))?
    };
    let b = match b_txt.trim_start_matches('+') {
        "" => Rational::one(),
        "-" => -Rational::one(),
        t => t
            .parse::<Rational>()
            .map_err(|_| format!("malformed coefficient `{s}`"))?,
    };
    Ok(Scalar::quad_unchecked(a, b, d))
}
