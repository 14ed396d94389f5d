//! Text and JSON forms of GW elements.
//!
//! Text form: a signed sum of terms `k<c>`, `kh` and bare integers (multiples
//! of `<1>`), with one level of `k(...)` grouping. Inside brackets a class is an
//! integer, `u`, or an integer multiple of `d` such as `2d` or `-2d` when a
//! twist class is supplied to the parser.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::element::GwElement;
use super::field::{BaseField, SquareClass};
use crate::{Error, Result};

/// Printing options.
#[derive(Debug, Clone, Copy, Default)]
pub struct FormatOptions {
    /// Pull `min(m(1), m(-1))` copies of h out of the `<1>` and `<-1>` terms.
    pub extract_h: bool,
    /// Print the stored term map instead of the field-canonical form.
    pub raw: bool,
}

fn push_term(out: &mut String, coeff: i64, atom: &str) {
    if coeff == 0 {
        return;
    }
    let body = if coeff.abs() == 1 && !atom.is_empty() {
        atom.to_string()
    } else {
        format!("{}{}", coeff.abs(), atom)
    };
    if out.is_empty() {
        if coeff < 0 {
            out.push('-');
        }
    } else {
        out.push_str(if coeff < 0 { " - " } else { " + " });
    }
    out.push_str(&body);
}

/// Formats `x`, e.g. `6<1> + <2> + <-2> + 2h`.
pub fn format_gw(x: &GwElement, opts: FormatOptions) -> String {
    let base = if opts.raw { x.clone() } else { x.canonical() };
    let field = base.field();
    let mut terms: Vec<(SquareClass, i64)> = base.terms().iter().map(|(c, m)| (*c, *m)).collect();
    let mut h = 0;
    if opts.extract_h && !field.is_finite() {
        let one = field.one();
        let minus = field.minus_one();
        let a = base.mult(one);
        let b = base.mult(minus);
        if a.signum() == b.signum() {
            h = a.signum() * a.abs().min(b.abs());
            for t in terms.iter_mut() {
                if t.0 == one || t.0 == minus {
                    t.1 -= h;
                }
            }
        }
    }
    terms.sort_by_key(|(c, _)| c.display_key());
    let mut out = String::new();
    for (c, m) in terms {
        push_term(&mut out, m, &format!("<{c}>"));
    }
    push_term(&mut out, h, "h");
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Compact finite-field style, e.g. `3+<u>` or `6`.
pub fn format_compact(x: &GwElement) -> String {
    let c = x.canonical();
    if !x.field().is_finite() {
        return format_gw(x, FormatOptions::default());
    }
    let ones = c.mult(SquareClass::Finite(false));
    let u = c.mult(SquareClass::Finite(true));
    match (ones, u) {
        (n, 0) => n.to_string(),
        (0, 1) => "<u>".to_string(),
        (n, 1) => format!("{n}+<u>"),
        _ => unreachable!("canonical form has at most one <u>"),
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: BaseField,
    d: Option<SquareClass>,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn int(&mut self) -> Option<i64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            self.chars[start..self.pos].iter().collect::<String>().parse().ok()
        }
    }

    fn expr(&mut self) -> Result<GwElement> {
        let mut acc = GwElement::zero(self.field);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = &acc + &t.scale(sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GwElement> {
        let coeff = self.int();
        let atom = match self.peek() {
            Some('<') => {
                self.pos += 1;
                let c = self.class()?;
                if self.peek() != Some('>') {
                    return Err(self.err("expected '>'"));
                }
                self.pos += 1;
                GwElement::class(self.field, c)
            }
            Some('h') => {
                self.pos += 1;
                GwElement::hyperbolic(self.field)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            _ => {
                if coeff.is_none() {
                    return Err(self.err("expected a term"));
                }
                GwElement::one(self.field)
            }
        };
        Ok(atom.scale(coeff.unwrap_or(1)))
    }

    fn class(&mut self) -> Result<SquareClass> {
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            if self.peek() == Some('+') {
                self.pos += 1;
            }
            false
        };
        let n = self.int();
        let mut c = match self.peek() {
            Some('u') if self.field.is_finite() => {
                self.pos += 1;
                let base = match n {
                    Some(k) => self.field.class_of_int(k)?,
                    None => self.field.one(),
                };
                base.mul(SquareClass::Finite(true))
            }
            Some('d') => {
                self.pos += 1;
                let d = self.d.ok_or_else(|| self.err("class mentions d but no d given"))?;
                match n {
                    Some(k) => self.field.class_of_int(k)?.mul(d),
                    None => d,
                }
            }
            _ => {
                let k = n.ok_or_else(|| self.err("expected a class"))?;
                self.field.class_of_int(k)?
            }
        };
        if neg {
            c = c.mul(self.field.minus_one());
        }
        Ok(c)
    }
}

/// Parses the text form; `d` substitutes occurrences of `d` inside brackets.
pub fn parse_gw(s: &str, field: BaseField, d: Option<SquareClass>) -> Result<GwElement> {
    let normalized: String = s
        .chars()
        .map(|c| match c {
            '⟨' | '〈' => '<',
            '⟩' | '〉' => '>',
            '−' => '-',
            c => c,
        })
        .filter(|c| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        chars: normalized.chars().collect(),
        pos: 0,
        field,
        d,
        src: s,
    };
    let x = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(x)
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    class: String,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    field: BaseField,
    terms: Vec<RawTerm>,
}

impl Serialize for GwElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawElement {
            field: self.field(),
            terms: self
                .terms()
                .iter()
                .map(|(c, m)| RawTerm {
                    class: c.to_string(),
                    mult: *m,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GwElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawElement::deserialize(d)?;
        let mut terms = Vec::new();
        for t in raw.terms {
            let c = raw.field.parse_class(&t.class).map_err(serde::de::Error::custom)?;
            terms.push((c, t.mult));
        }
        GwElement::from_terms(raw.field, terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw::gw_eq;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn printed_style_strings() {
        let d = q().class_of_int(-1).unwrap();
        let x = parse_gw("6<1> + <2> + <2d> + 2h", q(), Some(d)).unwrap();
        let opts = FormatOptions {
            extract_h: true,
            raw: false,
        };
        assert_eq!(format_gw(&x, opts), "6<1> + <2> + <-2> + 2h");
        let y = parse_gw("576⟨1⟩ + 255(⟨2⟩+⟨2d⟩) + 1212h", q(), Some(d)).unwrap();
        assert_eq!(y.rank(), 576 + 510 + 2424);
        assert_eq!(format_gw(&GwElement::zero(q()), opts), "0");
        let z = parse_gw("-<2> + 3", q(), None).unwrap();
        assert_eq!(format_gw(&z, FormatOptions::default()), "3<1> - <2>");
    }

    #[test]
    fn finite_strings() {
        let f = BaseField::finite(5).unwrap();
        let x = parse_gw("3 + <u>", f, None).unwrap();
        assert_eq!(format_compact(&x), "3+<u>");
        assert_eq!(format_gw(&x, FormatOptions::default()), "3<1> + <u>");
        let y = parse_gw("2<u>", f, None).unwrap();
        assert_eq!(format_compact(&y), "2");
        assert!(parse_gw("<d>", f, None).is_err());
        assert!(parse_gw("<2", f, None).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = parse_gw("2<1> - <-3> + h", q(), None).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"field":{"kind":"Q"},"terms":[{"class":"-3","mult":-1}"#));
        let back: GwElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let printed = format_gw(&x, FormatOptions::default());
        assert!(gw_eq(&parse_gw(&printed, q(), None).unwrap(), &x).unwrap());
    }
}
