//! Exact arithmetic in cyclotomic fields.
//!
//! An element of Q(zeta_N) is stored as its coefficient vector in the power
//! basis 1, z, ..., z^(phi(N)-1), always reduced modulo the N-th cyclotomic
//! polynomial, so equal values have equal vectors.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lexer::{tokenize, Cursor, SyntaxError, SyntaxErrorKind, Tok};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroInput,
    #[error(transparent)]
    Parse(#[from] SyntaxError),
}

/// The field data shared by all numbers of one conductor.
#[derive(Debug)]
struct Cyclotomic {
    conductor: u32,
    /// Monic Phi_N, coefficients from the constant term up.
    modulus: Vec<BigInt>,
}

impl Cyclotomic {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

fn field(conductor: u32) -> Arc<Cyclotomic> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Cyclotomic>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().expect("field cache poisoned");
    guard
        .entry(conductor)
        .or_insert_with(|| {
            Arc::new(Cyclotomic {
                conductor,
                modulus: cyclotomic_polynomial(conductor),
            })
        })
        .clone()
}

/// Phi_n as integer coefficients, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let n = n as usize;
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_monic_division(&num, &cyclotomic_polynomial(d as u32));
        }
    }
    num
}

fn exact_monic_division(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// An exact element of the cyclotomic field Q(zeta_N).
#[derive(Clone)]
pub struct CycNumber {
    field: Arc<Cyclotomic>,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    fn from_poly(field: Arc<Cyclotomic>, mut poly: Vec<BigRational>) -> Self {
        let deg = field.degree();
        for k in (deg..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[k], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (i, m) in field.modulus.iter().enumerate().take(deg) {
                poly[k - deg + i] -= &c * BigRational::from_integer(m.clone());
            }
        }
        poly.resize(deg, BigRational::zero());
        CycNumber { field, coeffs: poly }
    }

    /// The zero element of Q(zeta_N).
    pub fn zero(conductor: u32) -> Self {
        Self::from_rational(BigRational::zero(), conductor)
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(BigRational::one(), conductor)
    }

    pub fn from_integer(n: i64, conductor: u32) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()), conductor)
    }

    pub fn from_rational(q: BigRational, conductor: u32) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        let f = field(conductor);
        let mut coeffs = vec![BigRational::zero(); f.degree()];
        coeffs[0] = q;
        CycNumber { field: f, coeffs }
    }

    /// zeta_N^k for any integer k.
    pub fn zeta_power(k: i64, conductor: u32) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        let f = field(conductor);
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_poly(f, poly)
    }

    /// Builds an element from power-basis coefficients (reduced on the way in).
    pub fn from_coefficients(coeffs: Vec<BigRational>, conductor: u32) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        Self::from_poly(field(conductor), coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    /// Re-expresses the element in Q(zeta_M), where N divides M.
    pub fn lift(&self, conductor: u32) -> Self {
        let n = self.conductor();
        assert!(conductor.is_multiple_of(n), "cannot lift from {n} to {conductor}");
        if conductor == n {
            return self.clone();
        }
        let step = (conductor / n) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(field(conductor), poly)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor() == b.conductor() {
            return (a.clone(), b.clone());
        }
        let l = a.conductor().lcm(&b.conductor());
        (a.lift(l), b.lift(l))
    }

    fn add_ref(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycNumber { field: a.field, coeffs }
    }

    fn neg_ref(&self) -> Self {
        CycNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Numerators over the least common denominator.
    fn integral(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (nums, den)
    }

    /// Multiplies over Z and reduces modulo the monic Phi_N, so that only
    /// the final coefficients need normalizing.
    fn mul_ref(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let (x, dx) = a.integral();
        let (y, dy) = b.integral();
        let deg = x.len();
        let mut poly = vec![BigInt::zero(); 2 * deg - 1];
        for (i, u) in x.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, v) in y.iter().enumerate() {
                if !v.is_zero() {
                    poly[i + j] += u * v;
                }
            }
        }
        for k in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            for (i, m) in a.field.modulus.iter().enumerate().take(deg) {
                if !m.is_zero() {
                    poly[k - deg + i] -= &c * m;
                }
            }
        }
        poly.truncate(deg);
        let den = dx * dy;
        let coeffs = poly.into_iter().map(|n| BigRational::new(n, den.clone())).collect();
        CycNumber { field: a.field, coeffs }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // Invariant: s_k * self = r_k (mod Phi_N).
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while degree(&r1).is_some_and(|d| d > 0) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].clone();
        let inv: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        Ok(Self::from_poly(self.field.clone(), inv))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul_ref(&other.inverse()?))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self, FieldError> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.conductor());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Ok(acc)
    }

    /// The least m with self^m = 1, if self is a root of unity.
    pub fn root_of_unity_order(&self) -> Result<Option<u32>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        let bound = self.conductor().lcm(&2);
        for m in 1..=bound {
            if bound.is_multiple_of(m) && self.pow(m as i64)?.is_one() {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem = trim(a.to_vec());
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        for i in 0..=db {
            rem[dr - db + i] -= &c * &b[i];
        }
        quot[dr - db] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

/// Lexicographic on coefficient vectors; numbers of different conductors are
/// compared in their common lift.
impl Ord for CycNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.conductor() == other.conductor() {
            return self.coeffs.cmp(&other.coeffs);
        }
        let (a, b) = Self::common(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialOrd for CycNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                $body(self, rhs)
            }
        }
        impl std::ops::$trait<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                $body(&self, &rhs)
            }
        }
        impl std::ops::$trait<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                $body(&self, rhs)
            }
        }
        impl std::ops::$trait<CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &CycNumber, b: &CycNumber| a.add_ref(b));
binop!(Sub, sub, |a: &CycNumber, b: &CycNumber| a.add_ref(&b.neg_ref()));
binop!(Mul, mul, |a: &CycNumber, b: &CycNumber| a.mul_ref(b));

impl std::ops::Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        self.neg_ref()
    }
}

impl std::ops::Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        self.neg_ref()
    }
}

/// The four field operations, for callers that dispatch on an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyc_arith(op: ArithOp, a: &CycNumber, b: &CycNumber) -> Result<CycNumber, FieldError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// Prints in the scalar grammar, e.g. `1 - 1/3*z^2`, so the output parses back.
impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let monomial = match k {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{k}")),
            };
            match monomial {
                None => write!(f, "{mag}")?,
                Some(m) if mag.is_one() => f.write_str(&m)?,
                Some(m) => write!(f, "{mag}*{m}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber({} in Q(z_{}))", self, self.conductor())
    }
}

impl serde::Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses a scalar expression in Q(zeta_N); `z` stands for zeta_N.
pub fn cyc_parse(expr: &str, conductor: u32) -> Result<CycNumber, FieldError> {
    if conductor == 0 {
        return Err(FieldError::ZeroConductor);
    }
    let mut cur = Cursor::new(tokenize(expr)?);
    let value = parse_scalar(&mut cur, conductor)?;
    if !cur.is_eof() {
        let t = cur.peek();
        return Err(SyntaxError::syntax(t.location, format!("unexpected {}", t.tok)).into());
    }
    Ok(value)
}

/// expr := term (('+'|'-') term)*
pub(crate) fn parse_scalar(cur: &mut Cursor, n: u32) -> Result<CycNumber, SyntaxError> {
    let mut acc = parse_term(cur, n)?;
    loop {
        if cur.eat(&Tok::Plus) {
            acc = acc + parse_term(cur, n)?;
        } else if cur.eat(&Tok::Minus) {
            acc = acc - parse_term(cur, n)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_term(cur: &mut Cursor, n: u32) -> Result<CycNumber, SyntaxError> {
    let mut acc = parse_factor(cur, n)?;
    loop {
        if cur.eat(&Tok::Star) {
            acc = acc * parse_factor(cur, n)?;
        } else if cur.peek().tok == Tok::Slash {
            let at = cur.advance().location;
            let d = parse_factor(cur, n)?;
            acc = acc.checked_div(&d).map_err(|_| {
                SyntaxError::new(SyntaxErrorKind::DivisionByZero, at, "division by zero")
            })?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_factor(cur: &mut Cursor, n: u32) -> Result<CycNumber, SyntaxError> {
    let t = cur.advance();
    match t.tok {
        Tok::Int(v) => Ok(CycNumber::from_rational(BigRational::from_integer(v), n)),
        Tok::Ident(ref name) if name == "z" => {
            if !cur.eat(&Tok::Caret) {
                return Ok(CycNumber::zeta_power(1, n));
            }
            let neg = cur.eat(&Tok::Minus);
            let e = cur.advance();
            let Tok::Int(v) = e.tok else {
                return Err(SyntaxError::new(
                    SyntaxErrorKind::NonIntegerPower,
                    e.location,
                    "power of z must be an integer",
                ));
            };
            let v = if neg { -v } else { v };
            let reduced: i64 = v
                .mod_floor(&BigInt::from(n))
                .try_into()
                .expect("residue fits in i64");
            Ok(CycNumber::zeta_power(reduced, n))
        }
        Tok::LParen => {
            let inner = parse_scalar(cur, n)?;
            cur.expect(&Tok::RParen)?;
            Ok(inner)
        }
        Tok::Minus => Ok(-parse_factor(cur, n)?),
        other => Err(SyntaxError::syntax(
            t.location,
            format!("expected a number, 'z' or '(', found {other}"),
        )),
    }
}

/// Degree of Q(zeta_N) over Q.
pub fn field_degree(conductor: u32) -> usize {
    euler_phi(conductor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex_oracle::*;

    /// Floating-point evaluation, used only to cross-check exact results.
    mod num_complex_oracle {
        use super::super::CycNumber;
        use num_traits::ToPrimitive;

        pub fn eval(x: &CycNumber) -> (f64, f64) {
            let n = x.conductor() as f64;
            let theta = 2.0 * std::f64::consts::PI / n;
            x.coefficients().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
                let c = c.to_f64().unwrap();
                let a = theta * k as f64;
                (re + c * a.cos(), im + c * a.sin())
            })
        }
    }

    fn p(s: &str, n: u32) -> CycNumber {
        cyc_parse(s, n).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_polynomial(n).iter().map(|c| c.try_into().unwrap()).collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(24).len() - 1, field_degree(24));
    }

    #[test]
    fn parses_the_basic_examples() {
        assert_eq!(p("2", 4), CycNumber::from_integer(2, 4));
        assert_eq!(p("z^2", 4), CycNumber::from_integer(-1, 4));
        assert!(p("z + z^3", 4).is_zero());
        assert_eq!(p("z^-1", 4), p("z^3", 4));
        assert_eq!(p("-(1 + z) * 2", 3), p("-2 - 2*z", 3));
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(matches!(
            cyc_parse("1/(z + z^3)", 4),
            Err(FieldError::Parse(SyntaxError { kind: SyntaxErrorKind::DivisionByZero, .. }))
        ));
        assert!(matches!(
            cyc_parse("z^z", 4),
            Err(FieldError::Parse(SyntaxError { kind: SyntaxErrorKind::NonIntegerPower, .. }))
        ));
        assert!(matches!(
            cyc_parse("1 +", 4),
            Err(FieldError::Parse(SyntaxError { kind: SyntaxErrorKind::Syntax, .. }))
        ));
        assert!(cyc_parse("2^3", 4).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let one = CycNumber::one(4);
        assert!((&one + &(-&one)).is_zero());
        let i = CycNumber::zeta_power(1, 4);
        assert_eq!(&i * &i, CycNumber::from_integer(-1, 4));

        let q = cyc_arith(ArithOp::Div, &p("2*z", 8), &p("z^3", 8)).unwrap();
        assert_eq!(q, p("2*z^6", 8));
        assert_eq!(q, p("-2*z^2", 8));
        assert_eq!(q, p("2*z^-2", 8));
        let (re, im) = eval(&q);
        // 2 * exp(-i*pi/2) = -2i
        assert!((re - 0.0).abs() < 1e-12 && (im + 2.0).abs() < 1e-12);
        assert_eq!(
            cyc_arith(ArithOp::Div, &one, &CycNumber::zero(4)),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn orders_of_roots_of_unity() {
        assert_eq!(CycNumber::one(8).root_of_unity_order().unwrap(), Some(1));
        assert_eq!(p("z^2", 8).root_of_unity_order().unwrap(), Some(4));
        assert_eq!(p("2", 8).root_of_unity_order().unwrap(), None);
        assert_eq!(p("-z", 3).root_of_unity_order().unwrap(), Some(6));
        assert_eq!(CycNumber::zero(3).root_of_unity_order(), Err(FieldError::ZeroInput));
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1", "-1", "z", "-z^3", "1 - 1/3*z^2", "5/2 + z - 7*z^3"] {
            let x = p(s, 8);
            assert_eq!(x.to_string(), s);
            assert_eq!(p(&x.to_string(), 8), x);
        }
    }

    #[test]
    fn mixed_conductors_lift_to_the_lcm() {
        let i = CycNumber::zeta_power(1, 4);
        let w = CycNumber::zeta_power(1, 3);
        let s = &i + &w;
        assert_eq!(s.conductor(), 12);
        assert_eq!(s, &CycNumber::zeta_power(3, 12) + &CycNumber::zeta_power(4, 12));
        assert_eq!(i, CycNumber::zeta_power(2, 8));
    }

    #[test]
    fn numeric_cross_check_of_inverses() {
        for s in ["1 + z", "3 - 2*z^5 + z^7", "1/2*z^3 - 4"] {
            let x = p(s, 24);
            let inv = x.inverse().unwrap();
            assert!((&x * &inv).is_one());
            let (a, b) = eval(&x);
            let (c, d) = eval(&inv);
            assert!((a * c - b * d - 1.0).abs() < 1e-9 && (a * d + b * c).abs() < 1e-9);
        }
    }
}
