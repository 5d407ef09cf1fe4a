//! Parsers for the canonical morphism literals:
//!
//! * `poly(N->M){ p1 ; ... ; pM }` with polynomials over the category's rig,
//! * `mat(N->M){ e11 .. e1M ; ... }` with one row per domain coordinate,
//! * `smooth(N->M){ expr1 ; ... ; exprM }` with closed-form expressions.
//!
//! Every parser is the inverse of the corresponding `Display`
//! implementation: printing a morphism and parsing it back yields the same
//! morphism. Errors carry a 1-based line and column and a message naming
//! what was expected, so a misplaced token in a long literal is findable.

use thiserror::Error;

use crate::category::{Arity, ParseMorphism};
use crate::mat::{MatCat, MatMorphism};
use crate::poly::Polynomial;
use crate::poly_cat::{PolyCat, PolyMorphism};
use crate::rig::Rig;
use crate::smooth::{Expr, SmoothCat, SmoothMorphism};

/// A parse failure at a source position (1-based line and column).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Byte-position scanner over the source with whitespace-skipping token
/// helpers; line/column are derived from the byte position on error.
struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let seen = &self.src[..self.pos];
        let line = 1 + seen.matches('\n').count();
        let col = 1 + seen.rsplit('\n').next().unwrap_or("").chars().count();
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.rest().chars().next() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    /// Consumes `ch` (after whitespace) when it is next.
    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{ch}'")))
        }
    }

    /// Consumes a literal token (after whitespace), with no gaps inside it.
    fn expect_str(&mut self, token: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(format!("expected '{token}'")))
        }
    }

    /// The longest leading run of ASCII letters, without consuming it.
    fn peek_ident(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_alphabetic())
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        &rest[..end]
    }

    fn parse_usize(&mut self, what: &str) -> Result<usize, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_digit())
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(self.error(format!("expected {what}")));
        }
        let value = rest[..end]
            .parse::<usize>()
            .map_err(|_| self.error(format!("{what} is too large")))?;
        self.pos += end;
        Ok(value)
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

/// Parses the `name(N->M){` opening of a morphism literal, naming the
/// mismatched kind when the source starts with a different literal.
fn parse_header(cur: &mut Cursor, expected: &str) -> Result<(Arity, Arity), ParseError> {
    let ident = cur.peek_ident();
    if ident != expected {
        let msg = if ["poly", "mat", "smooth"].contains(&ident) {
            format!("expected a '{expected}' literal, found '{ident}'")
        } else {
            format!("expected a '{expected}' literal")
        };
        return Err(cur.error(msg));
    }
    cur.expect_str(expected)?;
    cur.expect('(')?;
    let dom = cur.parse_usize("the domain arity")?;
    cur.expect_str("->")?;
    let cod = cur.parse_usize("the codomain arity")?;
    cur.expect(')')?;
    cur.expect('{')?;
    Ok((dom, cod))
}

/// Parses `count` semicolon-separated components followed by `}`.
fn parse_components<T>(
    cur: &mut Cursor,
    count: usize,
    mut component: impl FnMut(&mut Cursor) -> Result<T, ParseError>,
) -> Result<Vec<T>, ParseError> {
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        if i > 0 && !cur.eat(';') {
            return Err(cur.error(format!(
                "expected ';' before component {} of {count}",
                i + 1
            )));
        }
        out.push(component(cur)?);
    }
    if cur.eat(';') {
        return Err(cur.error(format!("more than {count} components")));
    }
    cur.expect('}')?;
    Ok(out)
}

/// Parses a sum-of-products polynomial. With `limit = Some(n)` variables
/// above `x{n}` are rejected; with `None` the arity is inferred from the
/// variables seen.
fn polynomial<R: Rig>(
    cur: &mut Cursor,
    rig: &R,
    limit: Option<usize>,
) -> Result<Polynomial<R>, ParseError> {
    let mut acc = poly_term(cur, rig, limit)?;
    while cur.eat('+') {
        acc = acc.add(&poly_term(cur, rig, limit)?);
    }
    Ok(acc)
}

fn poly_term<R: Rig>(
    cur: &mut Cursor,
    rig: &R,
    limit: Option<usize>,
) -> Result<Polynomial<R>, ParseError> {
    let mut acc = poly_factor(cur, rig, limit)?;
    while cur.eat('*') {
        acc = acc.mul(&poly_factor(cur, rig, limit)?);
    }
    Ok(acc)
}

fn poly_factor<R: Rig>(
    cur: &mut Cursor,
    rig: &R,
    limit: Option<usize>,
) -> Result<Polynomial<R>, ParseError> {
    cur.skip_ws();
    if let Some(index) = variable_token(cur, limit)? {
        let exponent = if cur.rest().starts_with('^') {
            cur.pos += 1;
            cur.parse_usize("an exponent")? as u32
        } else {
            1
        };
        let var = Polynomial::variable(rig.clone(), index, index + 1);
        let mut acc = Polynomial::constant(rig.clone(), rig.one(), 0);
        for _ in 0..exponent {
            acc = acc.mul(&var);
        }
        return Ok(acc);
    }
    match rig.parse_prefix(cur.rest()) {
        Some((value, len)) => {
            cur.pos += len;
            Ok(Polynomial::constant(rig.clone(), value, 0))
        }
        None => Err(cur.error("expected a coefficient or a variable like x1")),
    }
}

/// Consumes a variable token `x<digits>` when present, returning its
/// zero-based index; enforces 1-based numbering and the arity limit.
fn variable_token(cur: &mut Cursor, limit: Option<usize>) -> Result<Option<usize>, ParseError> {
    let rest = cur.rest();
    let mut chars = rest.chars();
    if chars.next() != Some('x') {
        return Ok(None);
    }
    if !chars.next().is_some_and(|c| c.is_ascii_digit()) {
        return Ok(None);
    }
    cur.pos += 1;
    let index = cur.parse_usize("a variable index")?;
    if index == 0 {
        return Err(cur.error("variable indices start at x1"));
    }
    if let Some(n) = limit {
        if index > n {
            return Err(cur.error(format!("variable x{index} exceeds the domain arity {n}")));
        }
    }
    Ok(Some(index - 1))
}

impl<R: Rig> ParseMorphism for PolyCat<R> {
    fn parse_morphism(&self, src: &str) -> Result<PolyMorphism<R>, ParseError> {
        let mut cur = Cursor::new(src);
        let (dom, cod) = parse_header(&mut cur, "poly")?;
        let comps = parse_components(&mut cur, cod, |cur| {
            polynomial(cur, self.rig(), Some(dom)).map(|p| p.with_ambient(dom))
        })?;
        cur.expect_end()?;
        Ok(PolyMorphism::new(dom, cod, comps))
    }
}

impl<R: Rig> PolyCat<R> {
    /// Parses one bare polynomial into a single-component morphism whose
    /// domain is inferred from the highest variable mentioned. A
    /// convenience for tests and examples; panics on malformed input.
    pub fn parse_str(&self, src: &str) -> PolyMorphism<R> {
        let mut cur = Cursor::new(src);
        let p = polynomial(&mut cur, self.rig(), None)
            .and_then(|p| cur.expect_end().map(|_| p))
            .unwrap_or_else(|e| panic!("{e} in {src:?}"));
        let dom = p.max_var().map_or(0, |v| v + 1);
        PolyMorphism::new(dom, 1, vec![p.with_ambient(dom)])
    }

    /// Parses bare polynomial components against an explicit domain arity.
    /// A convenience for tests and examples; panics on malformed input.
    pub fn parse_str_sig(&self, dom: Arity, comps: &[&str]) -> PolyMorphism<R> {
        let comps = comps
            .iter()
            .map(|src| {
                let mut cur = Cursor::new(src);
                polynomial(&mut cur, self.rig(), Some(dom))
                    .and_then(|p| cur.expect_end().map(|_| p))
                    .unwrap_or_else(|e| panic!("{e} in {src:?}"))
                    .with_ambient(dom)
            })
            .collect::<Vec<_>>();
        PolyMorphism::new(dom, comps.len(), comps)
    }
}

impl<R: Rig> ParseMorphism for MatCat<R> {
    fn parse_morphism(&self, src: &str) -> Result<MatMorphism<R>, ParseError> {
        let mut cur = Cursor::new(src);
        let (dom, cod) = parse_header(&mut cur, "mat")?;
        let mut entries = Vec::with_capacity(dom * cod);
        for row in 0..dom {
            if row > 0 && !cur.eat(';') {
                return Err(cur.error(format!("expected ';' before row {} of {dom}", row + 1)));
            }
            for col in 0..cod {
                cur.skip_ws();
                match self.rig().parse_prefix(cur.rest()) {
                    Some((value, len)) => {
                        cur.pos += len;
                        entries.push(value);
                    }
                    None => {
                        return Err(cur.error(format!(
                            "expected entry {} of {cod} in row {} of {dom}",
                            col + 1,
                            row + 1
                        )))
                    }
                }
            }
        }
        if cur.eat(';') {
            return Err(cur.error(format!("more than {dom} rows")));
        }
        cur.expect('}')?;
        cur.expect_end()?;
        Ok(self.morphism(dom, cod, entries))
    }
}

/// Parses a smooth scalar expression (sums of products of signed atoms).
fn smooth_expr(cur: &mut Cursor, nvars: usize) -> Result<Expr, ParseError> {
    let mut acc = smooth_product(cur, nvars)?;
    while cur.eat('+') {
        acc = acc + smooth_product(cur, nvars)?;
    }
    Ok(acc)
}

fn smooth_product(cur: &mut Cursor, nvars: usize) -> Result<Expr, ParseError> {
    let mut acc = smooth_unary(cur, nvars)?;
    while cur.eat('*') {
        acc = acc * smooth_unary(cur, nvars)?;
    }
    Ok(acc)
}

fn smooth_unary(cur: &mut Cursor, nvars: usize) -> Result<Expr, ParseError> {
    if cur.eat('-') {
        return Ok(-smooth_unary(cur, nvars)?);
    }
    smooth_atom(cur, nvars)
}

fn smooth_atom(cur: &mut Cursor, nvars: usize) -> Result<Expr, ParseError> {
    cur.skip_ws();
    if cur.eat('(') {
        let inner = smooth_expr(cur, nvars)?;
        cur.expect(')')?;
        return Ok(inner);
    }
    if let Some(index) = variable_token(cur, Some(nvars))? {
        return Ok(Expr::var(index));
    }
    let ident = cur.peek_ident();
    if !ident.is_empty() {
        let builder = match ident {
            "sin" => Expr::sin as fn(Expr) -> Expr,
            "cos" => Expr::cos,
            "exp" => Expr::exp,
            other => return Err(cur.error(format!("unknown function '{other}'"))),
        };
        cur.expect_str(ident)?;
        cur.expect('(')?;
        let inner = smooth_expr(cur, nvars)?;
        cur.expect(')')?;
        return Ok(builder(inner));
    }
    smooth_number(cur)
}

fn smooth_number(cur: &mut Cursor) -> Result<Expr, ParseError> {
    cur.skip_ws();
    let rest = cur.rest();
    let bytes = rest.as_bytes();
    let mut end = 0;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    if end == 0 {
        return Err(cur.error("expected a number, a variable, or a function"));
    }
    if bytes.get(end) == Some(&b'.') {
        let mut tail = end + 1;
        while tail < bytes.len() && bytes[tail].is_ascii_digit() {
            tail += 1;
        }
        if tail > end + 1 {
            end = tail;
        }
    }
    if matches!(bytes.get(end), Some(&b'e') | Some(&b'E')) {
        let mut tail = end + 1;
        if matches!(bytes.get(tail), Some(&b'+') | Some(&b'-')) {
            tail += 1;
        }
        let digits_start = tail;
        while tail < bytes.len() && bytes[tail].is_ascii_digit() {
            tail += 1;
        }
        if tail > digits_start {
            end = tail;
        }
    }
    let value = rest[..end]
        .parse::<f64>()
        .map_err(|_| cur.error("malformed number"))?;
    cur.pos += end;
    Ok(Expr::constant(value))
}

impl ParseMorphism for SmoothCat {
    fn parse_morphism(&self, src: &str) -> Result<SmoothMorphism, ParseError> {
        let mut cur = Cursor::new(src);
        let (dom, cod) = parse_header(&mut cur, "smooth")?;
        let comps = parse_components(&mut cur, cod, |cur| smooth_expr(cur, dom))?;
        cur.expect_end()?;
        Ok(SmoothMorphism::new(dom, cod, comps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{GenCaps, GenerateMorphisms};
    use crate::rig::{IntRig, RatRig, TropicalRig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly_int() -> PolyCat<IntRig> {
        PolyCat::new(IntRig::default())
    }

    #[test]
    fn poly_literal_round_trips() {
        let cat = poly_int();
        for src in [
            "poly(3->2){ 2*x1*x3 + 3*x2*x3 ; 3*x1*x3 + 5*x3 }",
            "poly(2->1){ x1^2 + 3*x1*x2 + 5*x2 }",
            "poly(1->2){ 0 ; 5*x1 }",
            "poly(2->1){ x2 }",
            "poly(0->1){ -7 }",
            "poly(3->0){ }",
        ] {
            let parsed = cat.parse_morphism(src).expect(src);
            assert_eq!(parsed.to_string(), src);
        }
    }

    #[test]
    fn poly_random_print_parse_round_trip() {
        let cat = poly_int();
        let caps = GenCaps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..50 {
            let dom = rng.random_range(0..=3);
            let cod = rng.random_range(0..=3);
            let f = cat.random_morphism(&mut rng, dom, cod, &caps);
            let back = cat.parse_morphism(&f.to_string()).expect("round trip");
            assert_eq!(back, f, "on {f}");
        }
    }

    #[test]
    fn poly_parser_accepts_loose_whitespace_and_powers() {
        let cat = poly_int();
        let f = cat
            .parse_morphism("poly(2->1){\n  4*x1^3*x2 + x1 + 9\n}")
            .unwrap();
        assert_eq!(f.to_string(), "poly(2->1){ 4*x1^3*x2 + x1 + 9 }");
    }

    #[test]
    fn poly_errors_carry_positions() {
        let cat = poly_int();
        let err = cat.parse_morphism("poly(2->1){ x3 }").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("x3"), "{err}");
        assert!(err.message.contains("arity 2"), "{err}");
        assert_eq!(err.col, 15, "{err}");

        let err = cat.parse_morphism("poly(2->2){ x1 ;\n  x0 }").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("start at x1"), "{err}");

        let err = cat.parse_morphism("poly(2->2){ x1 }").unwrap_err();
        assert!(err.message.contains("';'"), "{err}");

        let err = cat.parse_morphism("poly(2->1){ x1 ; x2 }").unwrap_err();
        assert!(err.message.contains("more than 1 components"), "{err}");

        let err = cat.parse_morphism("mat(2->1){ 1 ; 2 }").unwrap_err();
        assert!(err.message.contains("found 'mat'"), "{err}");

        let err = cat.parse_morphism("poly(2->1){ x1 } extra").unwrap_err();
        assert!(err.message.contains("trailing"), "{err}");
    }

    #[test]
    fn rational_coefficients_parse() {
        let cat = PolyCat::new(RatRig::default());
        let f = cat.parse_morphism("poly(1->1){ 1/2*x1 + -3/4 }").unwrap();
        assert_eq!(f.to_string(), "poly(1->1){ 1/2*x1 + -3/4 }");
    }

    #[test]
    fn mat_literal_round_trips() {
        let cat = MatCat::new(IntRig::default());
        for src in [
            "mat(2->2){ 1 2 ; 3 4 }",
            "mat(3->1){ 0 ; 2 ; 3 }",
            "mat(1->3){ -1 0 7 }",
            "mat(0->2){ }",
        ] {
            let parsed = cat.parse_morphism(src).expect(src);
            assert_eq!(parsed.to_string(), src);
        }
        let trop = MatCat::new(TropicalRig);
        let src = "mat(2->2){ 0 -inf ; -inf 0 }";
        assert_eq!(trop.parse_morphism(src).unwrap().to_string(), src);
    }

    #[test]
    fn mat_errors_cite_row_and_entry() {
        let cat = MatCat::new(IntRig::default());
        let err = cat.parse_morphism("mat(2->2){ 1 2 ; 3 }").unwrap_err();
        assert!(err.message.contains("entry 2 of 2 in row 2 of 2"), "{err}");
        let err = cat
            .parse_morphism("mat(2->2){ 1 2 ; 3 4 ; 5 6 }")
            .unwrap_err();
        assert!(err.message.contains("more than 2 rows"), "{err}");
    }

    #[test]
    fn smooth_literal_round_trips() {
        let cat = SmoothCat::default();
        for src in [
            "smooth(2->1){ sin(x1)*x2 + -0.5 }",
            "smooth(1->2){ exp(x1) ; cos(x1)*x1 }",
            "smooth(3->1){ sin(x1*x2) + cos(x3) }",
            "smooth(2->1){ (x1 + x2)*x1 }",
            "smooth(1->1){ x1*-x1 }",
            "smooth(0->1){ 0.25 }",
        ] {
            let parsed = cat.parse_morphism(src).expect(src);
            assert_eq!(parsed.to_string(), src);
        }
    }

    #[test]
    fn smooth_random_print_parse_round_trip() {
        let cat = SmoothCat::default();
        let caps = GenCaps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..50 {
            let dom = rng.random_range(0..=3);
            let cod = rng.random_range(1..=3);
            let f = cat.random_morphism(&mut rng, dom, cod, &caps);
            let printed = f.to_string();
            let back = cat.parse_morphism(&printed).expect("round trip");
            assert_eq!(back, f, "on {printed}");
        }
    }

    #[test]
    fn smooth_derivative_print_parse_round_trip() {
        use crate::category::ReverseDifferential;
        let cat = SmoothCat::default();
        for f in crate::smooth::standard_pool() {
            let r = cat.reverse(&f);
            let back = cat.parse_morphism(&r.to_string()).expect("round trip");
            assert_eq!(back, r, "on {r}");
        }
    }

    #[test]
    fn smooth_rejects_unknown_functions() {
        let cat = SmoothCat::default();
        let err = cat.parse_morphism("smooth(1->1){ tan(x1) }").unwrap_err();
        assert!(err.message.contains("unknown function 'tan'"), "{err}");
    }

    #[test]
    fn parse_str_helpers_infer_and_check_arity() {
        let cat = poly_int();
        let f = cat.parse_str("2*x1 + 3*x2");
        assert_eq!(f.dom(), 2);
        assert_eq!(f.cod(), 1);
        let g = cat.parse_str_sig(2, &["x2"]);
        assert_eq!(g.to_string(), "poly(2->1){ x2 }");
    }
}
