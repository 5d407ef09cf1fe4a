//! Commutative rigs (semirings without subtraction) and the stock instances
//! used as coefficient domains throughout the crate.
//!
//! A rig carries two commutative monoids `(+, 0)` and `(*, 1)` with
//! multiplication distributing over addition and `0` annihilating. Instances
//! are passed by value, dictionary style, so a single instance type can carry
//! runtime data (e.g. the modulus of [`ModRig`]). All element representations
//! are canonical, so structural equality decides rig equality.
//!
//! Provided instances:
//!
//! * [`IntRig`], [`NatRig`], [`RatRig`]: arbitrary-precision integers,
//!   naturals, and normalized rationals, all through [`NumericRig`].
//! * [`BoolRig`]: booleans under or/and.
//! * [`ModRig`]: integers modulo `m` for a runtime `m >= 1`.
//! * [`TropicalRig`]: max-plus arithmetic on integers extended with a
//!   distinguished `-inf` zero.

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative rig together with the text and sampling hooks the rest of
/// the crate needs from its coefficient domain.
///
/// Element representations must be canonical: the default [`Rig::elem_eq`] is
/// structural equality, and every instance here keeps it that way (rationals
/// normalized, modular values reduced).
pub trait Rig: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + Eq + fmt::Debug;

    /// Stable name used in reports and for CLI selection, e.g. `"int"` or
    /// `"mod:7"`.
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Decides equality of elements. Canonical representations make the
    /// structural default correct for every provided instance.
    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.elem_eq(a, &self.zero())
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.elem_eq(a, &self.one())
    }

    /// `k`-fold sum `r + ... + r`. This is the natural-number action every
    /// rig carries even without general scalar multiplication; the
    /// polynomial derivative uses it for exponent factors.
    fn nat_scale(&self, k: u64, r: &Self::Elem) -> Self::Elem {
        let mut acc = self.zero();
        for _ in 0..k {
            acc = self.add(&acc, r);
        }
        acc
    }

    /// Image of the natural number `n` under the canonical map into the rig.
    fn natural(&self, n: u64) -> Self::Elem {
        self.nat_scale(n, &self.one())
    }

    /// Element produced for a raw generator draw (small naturals). Defaults
    /// to the canonical map; [`TropicalRig`] overrides it because the
    /// canonical map collapses onto `{-inf, 0}` there and would make random
    /// matrices degenerate.
    fn sample_elem(&self, raw: u64) -> Self::Elem {
        self.natural(raw)
    }

    /// Renders an element in the coefficient syntax the parser accepts.
    fn format_elem(&self, e: &Self::Elem) -> String;

    /// Parses an element from the front of `input`, returning it with the
    /// number of bytes consumed. `None` means no element starts here.
    fn parse_prefix(&self, input: &str) -> Option<(Self::Elem, usize)>;
}

/// Scans a leading number-shaped token: optional `-`, digits, and (when
/// `allow_slash`) an optional `/digits` fraction tail. Returns the byte
/// length of the token.
fn scan_number(input: &str, allow_negative: bool, allow_slash: bool) -> Option<usize> {
    let bytes = input.as_bytes();
    let mut pos = 0;
    if allow_negative && bytes.first() == Some(&b'-') {
        pos = 1;
    }
    let digits_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == digits_start {
        return None;
    }
    if allow_slash && bytes.get(pos) == Some(&b'/') {
        let mut tail = pos + 1;
        while tail < bytes.len() && bytes[tail].is_ascii_digit() {
            tail += 1;
        }
        if tail > pos + 1 {
            pos = tail;
        }
    }
    Some(pos)
}

/// Rig structure borrowed from a numeric type's own `Zero`/`One` arithmetic.
/// The label distinguishes instances in names and reports.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NumericRig<T> {
    label: &'static str,
    _marker: PhantomData<T>,
}

impl<T> NumericRig<T> {
    pub const fn new(label: &'static str) -> Self {
        NumericRig {
            label,
            _marker: PhantomData,
        }
    }
}

/// Arbitrary-precision integers.
pub type IntRig = NumericRig<BigInt>;
/// Arbitrary-precision naturals; the canonical subtraction-free domain.
pub type NatRig = NumericRig<BigUint>;
/// Normalized arbitrary-precision rationals.
pub type RatRig = NumericRig<BigRational>;

impl Default for NumericRig<BigInt> {
    fn default() -> Self {
        NumericRig::new("int")
    }
}

impl Default for NumericRig<BigUint> {
    fn default() -> Self {
        NumericRig::new("nat")
    }
}

impl Default for NumericRig<BigRational> {
    fn default() -> Self {
        NumericRig::new("rat")
    }
}

impl<T> Rig for NumericRig<T>
where
    T: Clone + Eq + fmt::Debug + fmt::Display + FromStr + Zero + One,
{
    type Elem = T;

    fn name(&self) -> String {
        self.label.to_string()
    }

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }

    fn format_elem(&self, e: &T) -> String {
        e.to_string()
    }

    fn parse_prefix(&self, input: &str) -> Option<(T, usize)> {
        let len = scan_number(input, true, true)?;
        let token = &input[..len];
        if let Some(slash) = token.find('/') {
            // A zero denominator must not reach the rational constructor.
            if token[slash + 1..].bytes().all(|b| b == b'0') {
                return None;
            }
            if let Ok(v) = T::from_str(token) {
                return Some((v, len));
            }
            // Integer-like types reject the fraction tail; consume just the
            // integral part and let the caller trip over the slash.
            let head = &token[..slash];
            return T::from_str(head).ok().map(|v| (v, slash));
        }
        T::from_str(token).ok().map(|v| (v, len))
    }
}

/// Booleans with or as addition and and as multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct BoolRig;

impl Rig for BoolRig {
    type Elem = bool;

    fn name(&self) -> String {
        "bool".to_string()
    }

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn format_elem(&self, e: &bool) -> String {
        if *e { "1" } else { "0" }.to_string()
    }

    fn parse_prefix(&self, input: &str) -> Option<(bool, usize)> {
        if input.starts_with("true") {
            return Some((true, 4));
        }
        if input.starts_with("false") {
            return Some((false, 5));
        }
        let len = scan_number(input, false, false)?;
        let nonzero = input[..len].bytes().any(|b| b != b'0');
        Some((nonzero, len))
    }
}

/// Integers modulo `m`, with every element kept reduced to `0..m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ModRig {
    modulus: u64,
}

impl ModRig {
    /// Panics when `m == 0`; `m == 1` yields the trivial rig.
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be at least 1");
        ModRig { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Rig for ModRig {
    type Elem = u64;

    fn name(&self) -> String {
        format!("mod:{}", self.modulus)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    fn natural(&self, n: u64) -> u64 {
        n % self.modulus
    }

    fn format_elem(&self, e: &u64) -> String {
        e.to_string()
    }

    fn parse_prefix(&self, input: &str) -> Option<(u64, usize)> {
        let len = scan_number(input, false, false)?;
        // Fold digits so literals longer than u64 still reduce correctly.
        let mut acc: u64 = 0;
        for b in input[..len].bytes() {
            let digit = (b - b'0') as u128;
            acc = ((acc as u128 * 10 + digit) % self.modulus as u128) as u64;
        }
        Some((acc, len))
    }
}

/// Max-plus element: an integer or the distinguished additive zero `-inf`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Tropical {
    NegInf,
    Fin(i64),
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::NegInf => write!(f, "-inf"),
            Tropical::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// The max-plus rig: addition is max (unit `-inf`), multiplication is
/// integer addition (unit `0`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct TropicalRig;

impl Rig for TropicalRig {
    type Elem = Tropical;

    fn name(&self) -> String {
        "tropical".to_string()
    }

    fn zero(&self) -> Tropical {
        Tropical::NegInf
    }

    fn one(&self) -> Tropical {
        Tropical::Fin(0)
    }

    fn add(&self, a: &Tropical, b: &Tropical) -> Tropical {
        *a.max(b)
    }

    fn mul(&self, a: &Tropical, b: &Tropical) -> Tropical {
        match (a, b) {
            (Tropical::NegInf, _) | (_, Tropical::NegInf) => Tropical::NegInf,
            (Tropical::Fin(x), Tropical::Fin(y)) => {
                Tropical::Fin(x.checked_add(*y).expect("tropical product overflow"))
            }
        }
    }

    /// Spreads draws over small finite values instead of the canonical map's
    /// two-point image `{-inf, 0}`.
    fn sample_elem(&self, raw: u64) -> Tropical {
        if raw == 0 {
            Tropical::NegInf
        } else {
            Tropical::Fin(raw as i64 - 3)
        }
    }

    fn format_elem(&self, e: &Tropical) -> String {
        e.to_string()
    }

    fn parse_prefix(&self, input: &str) -> Option<(Tropical, usize)> {
        if input.starts_with("-inf") {
            return Some((Tropical::NegInf, 4));
        }
        let len = scan_number(input, true, false)?;
        input[..len]
            .parse::<i64>()
            .ok()
            .map(|v| (Tropical::Fin(v), len))
    }
}

/// Rig selector as it appears on the command line and in reports.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RigName {
    Int,
    Nat,
    Rat,
    Bool,
    Mod(u64),
    Tropical,
}

impl FromStr for RigName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "int" => Ok(RigName::Int),
            "nat" => Ok(RigName::Nat),
            "rat" => Ok(RigName::Rat),
            "bool" => Ok(RigName::Bool),
            "tropical" => Ok(RigName::Tropical),
            _ => {
                if let Some(m) = s.strip_prefix("mod:") {
                    let modulus: u64 = m
                        .parse()
                        .map_err(|_| format!("invalid modulus in rig name '{s}'"))?;
                    if modulus == 0 {
                        return Err("modulus must be at least 1".to_string());
                    }
                    Ok(RigName::Mod(modulus))
                } else {
                    Err(format!(
                        "unknown rig '{s}' (expected int, nat, rat, bool, mod:M, or tropical)"
                    ))
                }
            }
        }
    }
}

impl fmt::Display for RigName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigName::Int => write!(f, "int"),
            RigName::Nat => write!(f, "nat"),
            RigName::Rat => write!(f, "rat"),
            RigName::Bool => write!(f, "bool"),
            RigName::Mod(m) => write!(f, "mod:{m}"),
            RigName::Tropical => write!(f, "tropical"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Exhaustively checks the rig laws over a small element pool.
    fn laws_hold<R: Rig>(rig: &R, pool: &[R::Elem]) {
        let zero = rig.zero();
        let one = rig.one();
        for a in pool {
            assert!(rig.elem_eq(&rig.add(a, &zero), a), "additive unit");
            assert!(rig.elem_eq(&rig.mul(a, &one), a), "multiplicative unit");
            assert!(rig.is_zero(&rig.mul(a, &zero)), "annihilation");
            for b in pool {
                assert!(rig.elem_eq(&rig.add(a, b), &rig.add(b, a)), "add commutes");
                assert!(rig.elem_eq(&rig.mul(a, b), &rig.mul(b, a)), "mul commutes");
                for c in pool {
                    assert!(
                        rig.elem_eq(&rig.add(&rig.add(a, b), c), &rig.add(a, &rig.add(b, c))),
                        "add associates"
                    );
                    assert!(
                        rig.elem_eq(&rig.mul(&rig.mul(a, b), c), &rig.mul(a, &rig.mul(b, c))),
                        "mul associates"
                    );
                    assert!(
                        rig.elem_eq(
                            &rig.mul(a, &rig.add(b, c)),
                            &rig.add(&rig.mul(a, b), &rig.mul(a, c))
                        ),
                        "distributivity"
                    );
                }
            }
        }
    }

    #[test]
    fn laws_all_instances() {
        let int = IntRig::default();
        laws_hold(&int, &[big(-3), big(0), big(1), big(2), big(5)]);

        let nat = NatRig::default();
        let nats: Vec<BigUint> = [0u32, 1, 2, 3, 7]
            .iter()
            .map(|&n| BigUint::from(n))
            .collect();
        laws_hold(&nat, &nats);

        let rat = RatRig::default();
        let rats: Vec<BigRational> = [(0, 1), (1, 1), (1, 2), (-3, 4), (5, 3)]
            .iter()
            .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        laws_hold(&rat, &rats);

        laws_hold(&BoolRig, &[false, true]);

        let mod7 = ModRig::new(7);
        laws_hold(&mod7, &[0, 1, 2, 3, 5, 6]);
        laws_hold(&ModRig::new(1), &[0]);

        let trop = TropicalRig;
        laws_hold(
            &trop,
            &[
                Tropical::NegInf,
                Tropical::Fin(-2),
                Tropical::Fin(0),
                Tropical::Fin(1),
                Tropical::Fin(4),
            ],
        );
    }

    #[test]
    fn nat_scale_examples() {
        let int = IntRig::default();
        assert_eq!(int.nat_scale(3, &big(2)), big(6));
        assert_eq!(int.nat_scale(0, &big(7)), big(0));
        assert!(BoolRig.nat_scale(4, &true));
        assert!(!BoolRig.nat_scale(0, &true));
        let mod7 = ModRig::new(7);
        assert_eq!(mod7.nat_scale(7, &3), 0);
        assert_eq!(
            TropicalRig.nat_scale(5, &Tropical::Fin(2)),
            Tropical::Fin(2)
        );
    }

    #[test]
    fn equality_is_canonical() {
        let int = IntRig::default();
        assert!(int.elem_eq(&int.add(&big(1), &big(1)), &big(2)));
        assert!(BoolRig.elem_eq(&BoolRig.add(&true, &true), &true));
        let rat = RatRig::default();
        let half = BigRational::new(big(2), big(4));
        assert!(rat.elem_eq(&half, &BigRational::new(big(1), big(2))));
    }

    #[test]
    fn modular_reduction() {
        let mod7 = ModRig::new(7);
        assert_eq!(mod7.natural(10), 3);
        assert_eq!(mod7.add(&5, &4), 2);
        assert_eq!(mod7.mul(&3, &5), 1);
        assert_eq!(ModRig::new(1).one(), 0);
    }

    #[test]
    fn tropical_arithmetic() {
        let t = TropicalRig;
        assert_eq!(
            t.add(&Tropical::Fin(3), &Tropical::NegInf),
            Tropical::Fin(3)
        );
        assert_eq!(
            t.add(&Tropical::Fin(3), &Tropical::Fin(5)),
            Tropical::Fin(5)
        );
        assert_eq!(
            t.mul(&Tropical::Fin(2), &Tropical::Fin(3)),
            Tropical::Fin(5)
        );
        assert_eq!(
            t.mul(&Tropical::NegInf, &Tropical::Fin(9)),
            Tropical::NegInf
        );
        assert_eq!(t.one(), Tropical::Fin(0));
    }

    #[test]
    fn parse_prefix_instances() {
        let int = IntRig::default();
        assert_eq!(int.parse_prefix("-12*x"), Some((big(-12), 3)));
        // Integer rigs stop before a fraction slash.
        assert_eq!(int.parse_prefix("3/4"), Some((big(3), 1)));

        let nat = NatRig::default();
        assert_eq!(nat.parse_prefix("15)"), Some((BigUint::from(15u32), 2)));
        assert!(nat.parse_prefix("-3").is_none());

        let rat = RatRig::default();
        assert_eq!(
            rat.parse_prefix("3/4 "),
            Some((BigRational::new(big(3), big(4)), 3))
        );
        assert_eq!(
            rat.parse_prefix("5;"),
            Some((BigRational::from_integer(big(5)), 1))
        );
        assert!(rat.parse_prefix("1/0").is_none());

        assert_eq!(BoolRig.parse_prefix("true"), Some((true, 4)));
        assert_eq!(BoolRig.parse_prefix("0"), Some((false, 1)));
        assert_eq!(BoolRig.parse_prefix("3"), Some((true, 1)));

        let t = TropicalRig;
        assert_eq!(t.parse_prefix("-inf"), Some((Tropical::NegInf, 4)));
        assert_eq!(t.parse_prefix("-4"), Some((Tropical::Fin(-4), 2)));

        let mod7 = ModRig::new(7);
        assert_eq!(mod7.parse_prefix("123"), Some((123 % 7, 3)));
    }

    #[test]
    fn rig_names_round_trip() {
        for name in ["int", "nat", "rat", "bool", "mod:7", "tropical"] {
            let parsed: RigName = name.parse().unwrap();
            assert_eq!(parsed.to_string(), name);
        }
        assert!("mod:0".parse::<RigName>().is_err());
        assert!("real".parse::<RigName>().is_err());
    }

    #[test]
    fn sample_elem_spreads_tropical() {
        let t = TropicalRig;
        assert_eq!(t.sample_elem(0), Tropical::NegInf);
        assert_eq!(t.sample_elem(5), Tropical::Fin(2));
        let int = IntRig::default();
        assert_eq!(int.sample_elem(4), big(4));
    }
}
