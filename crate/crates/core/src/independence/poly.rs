//! Boolean polynomials and the image bound for families with short
//! independent sequences.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::cells::{max_independent, MaxIndependent};
use super::sauer::i_threshold;
use crate::error::{Error, PreconditionFailure, Result};
use crate::setsys::{SetFamily, SubsetMask};

pub const DEFAULT_TUPLE_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(usize),
    Const(bool),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Var(i) => Some(*i),
            Expr::Const(_) => None,
            Expr::Not(e) => e.max_var(),
            Expr::And(a, b) | Expr::Or(a, b) => a.max_var().max(b.max_var()),
        }
    }

    fn eval(&self, args: &[&SubsetMask], ground: usize) -> SubsetMask {
        match self {
            Expr::Var(i) => args[*i].clone(),
            Expr::Const(false) => SubsetMask::empty(ground),
            Expr::Const(true) => SubsetMask::full(ground),
            Expr::Not(e) => e.eval(args, ground).complement(),
            Expr::And(a, b) => a.eval(args, ground).intersection(&b.eval(args, ground)),
            Expr::Or(a, b) => a.eval(args, ground).union(&b.eval(args, ground)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    /// `(a ∩ ¬b) ∪ (¬a ∩ b)`
    pub fn xor(a: Expr, b: Expr) -> Expr {
        Expr::or(
            Expr::and(a.clone(), Expr::not(b.clone())),
            Expr::and(Expr::not(a), b),
        )
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Const(b) => write!(f, "{}", *b as u8),
            Expr::Not(e) => write!(f, "(not {e})"),
            Expr::And(a, b) => write!(f, "(and {a} {b})"),
            Expr::Or(a, b) => write!(f, "(or {a} {b})"),
        }
    }
}

/// An `r`-ary Boolean polynomial. Every variable index is below the arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanPolynomial {
    arity: usize,
    expr: Expr,
}

impl BooleanPolynomial {
    pub fn new(arity: usize, expr: Expr) -> Result<Self> {
        if arity == 0 {
            return Err(Error::input("polynomial arity must be positive"));
        }
        if let Some(v) = expr.max_var() {
            if v >= arity {
                return Err(Error::input(format!("variable x{v} exceeds arity {arity}")));
            }
        }
        Ok(BooleanPolynomial { arity, expr })
    }

    /// Arity is one more than the largest variable index (at least 1).
    pub fn from_expr(expr: Expr) -> Self {
        let arity = expr.max_var().map_or(1, |v| v + 1);
        BooleanPolynomial { arity, expr }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn eval(&self, args: &[&SubsetMask]) -> Result<SubsetMask> {
        if args.len() != self.arity {
            return Err(Error::input(format!(
                "polynomial of arity {} applied to {} arguments",
                self.arity,
                args.len()
            )));
        }
        let ground = args[0].len();
        if let Some(a) = args.iter().find(|a| a.len() != ground) {
            return Err(Error::GroundMismatch {
                expected: ground,
                found: a.len(),
            });
        }
        Ok(self.expr.eval(args, ground))
    }
}

impl fmt::Display for BooleanPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

impl Serialize for BooleanPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Prefix syntax: `x<i>`, `0`, `1`, `(not e)`, `(and e e …)`, `(or e e …)`,
/// and `(xor e e)` as sugar for `(or (and a (not b)) (and (not a) b))`.
impl FromStr for BooleanPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let expr = parse_expr(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::input(format!(
                "trailing input at offset {} in polynomial",
                tokens[pos].0
            )));
        }
        Ok(BooleanPolynomial::from_expr(expr))
    }
}

fn tokenize(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | ')' => {
                if let Some(b) = start.take() {
                    out.push((b, &s[b..i]));
                }
                out.push((i, &s[i..i + 1]));
            }
            c if c.is_whitespace() => {
                if let Some(b) = start.take() {
                    out.push((b, &s[b..i]));
                }
            }
            _ => {
                if start.is_none() {
                    start = Some(i);
                }
            }
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    out
}

fn parse_expr(tokens: &[(usize, &str)], pos: &mut usize) -> Result<Expr> {
    let (off, tok) = *tokens
        .get(*pos)
        .ok_or_else(|| Error::input("unexpected end of polynomial"))?;
    *pos += 1;
    match tok {
        "(" => {
            let (op_off, op) = *tokens
                .get(*pos)
                .ok_or_else(|| Error::input("unexpected end of polynomial"))?;
            *pos += 1;
            let mut args = Vec::new();
            while tokens.get(*pos).map(|t| t.1) != Some(")") {
                if *pos >= tokens.len() {
                    return Err(Error::input(format!("unclosed '(' at offset {off}")));
                }
                args.push(parse_expr(tokens, pos)?);
            }
            *pos += 1;
            let arity_err = |want: &str| {
                Error::input(format!(
                    "operator {op:?} at offset {op_off} takes {want} arguments, got {}",
                    args.len()
                ))
            };
            match op {
                "not" => {
                    if args.len() != 1 {
                        return Err(arity_err("1"));
                    }
                    Ok(Expr::not(args.pop().expect("one arg")))
                }
                "and" | "or" => {
                    if args.len() < 2 {
                        return Err(arity_err("at least 2"));
                    }
                    let mut it = args.into_iter();
                    let first = it.next().expect("nonempty");
                    Ok(it.fold(first, |acc, e| {
                        if op == "and" {
                            Expr::and(acc, e)
                        } else {
                            Expr::or(acc, e)
                        }
                    }))
                }
                "xor" => {
                    if args.len() != 2 {
                        return Err(arity_err("2"));
                    }
                    let b = args.pop().expect("two args");
                    let a = args.pop().expect("two args");
                    Ok(Expr::xor(a, b))
                }
                _ => Err(Error::input(format!("unknown operator {op:?} at offset {op_off}"))),
            }
        }
        ")" => Err(Error::input(format!("unexpected ')' at offset {off}"))),
        "0" => Ok(Expr::Const(false)),
        "1" => Ok(Expr::Const(true)),
        t => t
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .map(Expr::Var)
            .ok_or_else(|| Error::input(format!("bad token {t:?} at offset {off}"))),
    }
}

/// `p(F)` together with, for each image member, the first tuple of family
/// positions that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyImage {
    pub family: SetFamily,
    pub sources: Vec<Vec<usize>>,
}

/// Evaluates `p` on every `r`-tuple (with repetition) of members, tuples in
/// lexicographic order, keeping first occurrences.
pub fn poly_image_traced(
    family: &SetFamily,
    p: &BooleanPolynomial,
    tuple_cap: u128,
) -> Result<PolyImage> {
    let k = family.len();
    let r = p.arity();
    let tuples = (k as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if tuples > tuple_cap {
        return Err(Error::cap("polynomial image (tuples)", tuples, tuple_cap));
    }
    let mut out = SetFamily::empty(family.ground_size());
    let mut sources = Vec::new();
    if k == 0 {
        return Ok(PolyImage {
            family: out,
            sources,
        });
    }
    let mut index: HashMap<SubsetMask, usize> = HashMap::new();
    let mut tuple = vec![0usize; r];
    loop {
        let args: Vec<&SubsetMask> = tuple.iter().map(|&i| &family[i]).collect();
        let v = p.eval(&args)?;
        if !index.contains_key(&v) {
            index.insert(v.clone(), out.len());
            out.push(v)?;
            sources.push(tuple.clone());
        }
        // odometer, last position fastest
        let mut j = r;
        loop {
            if j == 0 {
                return Ok(PolyImage {
                    family: out,
                    sources,
                });
            }
            j -= 1;
            tuple[j] += 1;
            if tuple[j] < k {
                break;
            }
            tuple[j] = 0;
        }
    }
}

pub fn poly_image(family: &SetFamily, p: &BooleanPolynomial) -> Result<SetFamily> {
    Ok(poly_image_traced(family, p, DEFAULT_TUPLE_CAP)?.family)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PolyBoundVerdict {
    Holds {
        threshold: u64,
        image_size: usize,
        image_max_independent: usize,
    },
    /// An independent subfamily of the image of length `threshold`.
    Violated {
        threshold: u64,
        members: Vec<usize>,
        sets: Vec<SubsetMask>,
        tuples: Vec<Vec<usize>>,
    },
    /// The input already has `n` independent members.
    PreconditionFailed { independent: MaxIndependent },
}

impl PolyBoundVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PolyBoundVerdict::Holds { .. })
    }
}

/// For a family without `n` independent members, `p(F)` has no independent
/// subfamily of length `I(n, arity p)`.
pub fn check_poly_bound(
    family: &SetFamily,
    n: u64,
    p: &BooleanPolynomial,
) -> Result<PolyBoundVerdict> {
    let gate = max_independent(family, Some(n as usize))?;
    if gate.size as u64 >= n {
        return Ok(PolyBoundVerdict::PreconditionFailed { independent: gate });
    }
    let threshold = i_threshold(n, p.arity() as u64)?;
    let image = poly_image_traced(family, p, DEFAULT_TUPLE_CAP)?;
    let mi = max_independent(&image.family, Some(threshold as usize))?;
    if (mi.size as u64) < threshold {
        Ok(PolyBoundVerdict::Holds {
            threshold,
            image_size: image.family.len(),
            image_max_independent: mi.size,
        })
    } else {
        Ok(PolyBoundVerdict::Violated {
            threshold,
            sets: mi.members.iter().map(|&i| image.family[i].clone()).collect(),
            tuples: mi.members.iter().map(|&i| image.sources[i].clone()).collect(),
            members: mi.members,
        })
    }
}

/// Like [`check_poly_bound`], but a failed gate is an error rather than a
/// verdict.
pub fn check_poly_bound_strict(
    family: &SetFamily,
    n: u64,
    p: &BooleanPolynomial,
) -> Result<PolyBoundVerdict> {
    match check_poly_bound(family, n, p)? {
        PolyBoundVerdict::PreconditionFailed { independent } => {
            Err(PreconditionFailure::IndependentSubfamily {
                indices: independent.members,
            }
            .into())
        }
        v => Ok(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::from_index_lists(n, sets.iter().map(|s| s.iter().copied())).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let p: BooleanPolynomial = "(and x0 (not x1))".parse().unwrap();
        assert_eq!(p.arity(), 2);
        assert_eq!(p.to_string(), "(and x0 (not x1))");
        let q: BooleanPolynomial = "(or (and x0 x1) x2)".parse().unwrap();
        assert_eq!(q.arity(), 3);
        let three: BooleanPolynomial = "(and x0 x1 x2)".parse().unwrap();
        assert_eq!(three.to_string(), "(and (and x0 x1) x2)");
        assert!("(and x0)".parse::<BooleanPolynomial>().is_err());
        assert!("(nand x0 x1)".parse::<BooleanPolynomial>().is_err());
        assert!("(and x0 x1".parse::<BooleanPolynomial>().is_err());
        assert!("x0 x1".parse::<BooleanPolynomial>().is_err());
        assert!("y0".parse::<BooleanPolynomial>().is_err());
        assert!(BooleanPolynomial::new(1, Expr::Var(1)).is_err());
    }

    #[test]
    fn xor_sugar_evaluates() {
        let p: BooleanPolynomial = "(xor x0 x1)".parse().unwrap();
        let a = SubsetMask::from_indices(4, [0, 1]).unwrap();
        let b = SubsetMask::from_indices(4, [1, 2]).unwrap();
        assert_eq!(p.eval(&[&a, &b]).unwrap().to_indices(), vec![0, 2]);
    }

    #[test]
    fn image_examples() {
        let f = fam(3, &[&[0, 1], &[1, 2]]);
        let p: BooleanPolynomial = "(and x0 x1)".parse().unwrap();
        let img = poly_image(&f, &p).unwrap();
        let lists: Vec<Vec<usize>> = img.iter().map(|m| m.to_indices()).collect();
        assert_eq!(lists, vec![vec![0, 1], vec![1], vec![1, 2]]);

        let dup = fam(3, &[&[0], &[1], &[0]]);
        let id: BooleanPolynomial = "x0".parse().unwrap();
        assert_eq!(poly_image(&dup, &id).unwrap(), dup.dedup());

        let taut: BooleanPolynomial = "(or x0 (not x0))".parse().unwrap();
        let img = poly_image(&f, &taut).unwrap();
        assert_eq!(img.len(), 1);
        assert!(img[0].is_full());
    }

    #[test]
    fn tuple_cap() {
        let f = SetFamily::new(2, vec![SubsetMask::empty(2); 11]).unwrap();
        let p: BooleanPolynomial = "(and x0 x1 x2 x3 x4 x5)".parse().unwrap();
        assert!(matches!(
            poly_image(&f, &p),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn bound_examples() {
        let chain = SetFamily::from_index_lists(6, (1..6).map(|i| 0..i)).unwrap();
        let p: BooleanPolynomial = "(and x0 x1)".parse().unwrap();
        match check_poly_bound(&chain, 2, &p).unwrap() {
            PolyBoundVerdict::Holds { threshold, .. } => assert_eq!(threshold, 3),
            v => panic!("unexpected {v:?}"),
        }

        let pair = fam(4, &[&[0, 1], &[0, 2]]);
        assert!(matches!(
            check_poly_bound(&pair, 2, &p).unwrap(),
            PolyBoundVerdict::PreconditionFailed { .. }
        ));
        assert!(matches!(
            check_poly_bound_strict(&pair, 2, &p),
            Err(Error::Precondition(PreconditionFailure::IndependentSubfamily { .. }))
        ));
    }
}
