//! Modal formulas over the primitives `Var`, `And`, `Not`, `Diamond`, `Forall`.
//!
//! The surface language also has `|`, `->`, `<->`, `[]` and `E`, but those exist
//! only in the parser and renderer; everything downstream (evaluation, decision
//! procedures, substitution) sees the five primitives. Desugarings:
//!
//! - `a | b`   is `~(~a & ~b)`
//! - `a -> b`  is `~(a & ~b)`
//! - `a <-> b` is `(a -> b) & (b -> a)`, further desugared
//! - `[]a`     is `~<>~a`
//! - `E a`     is `~A~a`
//!
//! Variables are written `p0`, `p1`, ...; the parser enforces an index budget
//! (64 by default) so variable sets stay within one machine word downstream.

mod parser;

pub use parser::{parse, parse_with_budget, ParseError, DEFAULT_VAR_BUDGET};

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Var(u32),
    And(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Diamond(Box<Formula>),
    Forall(Box<Formula>),
}

impl Formula {
    pub fn var(i: u32) -> Formula {
        Formula::Var(i)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn diamond(f: Formula) -> Formula {
        Formula::Diamond(Box::new(f))
    }

    pub fn forall(f: Formula) -> Formula {
        Formula::Forall(Box::new(f))
    }

    // Derived connectives; these build the desugared tree directly.

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(l), Formula::not(r)))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::not(Formula::and(l, Formula::not(r)))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::and(
            Formula::imp(l.clone(), r.clone()),
            Formula::imp(r, l),
        )
    }

    /// `[]f`, i.e. `~<>~f`.
    pub fn bx(f: Formula) -> Formula {
        Formula::not(Formula::diamond(Formula::not(f)))
    }

    /// `E f`, i.e. `~A~f`.
    pub fn exists(f: Formula) -> Formula {
        Formula::not(Formula::forall(Formula::not(f)))
    }

    /// The bottom constant, spelled `p0 & ~p0`.
    pub fn bot() -> Formula {
        Formula::and(Formula::var(0), Formula::not(Formula::var(0)))
    }

    /// The top constant, `~(p0 & ~p0)`.
    pub fn top() -> Formula {
        Formula::not(Formula::bot())
    }

    /// Distinct subtrees in first-visit (pre-order) order.
    pub fn subformulas(&self) -> Vec<&Formula> {
        fn walk<'a>(f: &'a Formula, seen: &mut BTreeSet<&'a Formula>, out: &mut Vec<&'a Formula>) {
            if !seen.insert(f) {
                return;
            }
            out.push(f);
            match f {
                Formula::Var(_) => {}
                Formula::And(l, r) => {
                    walk(l, seen, out);
                    walk(r, seen, out);
                }
                Formula::Not(g) | Formula::Diamond(g) | Formula::Forall(g) => walk(g, seen, out),
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        walk(self, &mut seen, &mut out);
        out
    }

    /// Number of distinct `<>`-rooted subtrees.
    pub fn diamond_count(&self) -> usize {
        self.subformulas()
            .iter()
            .filter(|f| matches!(f, Formula::Diamond(_)))
            .count()
    }

    /// Number of distinct `A`-rooted subtrees.
    pub fn forall_count(&self) -> usize {
        self.subformulas()
            .iter()
            .filter(|f| matches!(f, Formula::Forall(_)))
            .count()
    }

    pub fn has_forall(&self) -> bool {
        self.forall_count() > 0
    }

    /// Indices of the variables occurring in the formula, ascending.
    pub fn variables(&self) -> BTreeSet<u32> {
        let mut vars = BTreeSet::new();
        for f in self.subformulas() {
            if let Formula::Var(i) = f {
                vars.insert(*i);
            }
        }
        vars
    }

    /// Total node count.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::And(l, r) => 1 + l.size() + r.size(),
            Formula::Not(g) | Formula::Diamond(g) | Formula::Forall(g) => 1 + g.size(),
        }
    }

    /// Simultaneous substitution: every `Var(i)` with `i` in the map is replaced
    /// by its image. Replacement happens in one pass, so images are not re-visited.
    pub fn substitute(&self, map: &BTreeMap<u32, Formula>) -> Formula {
        match self {
            Formula::Var(i) => map.get(i).cloned().unwrap_or_else(|| self.clone()),
            Formula::And(l, r) => Formula::and(l.substitute(map), r.substitute(map)),
            Formula::Not(g) => Formula::not(g.substitute(map)),
            Formula::Diamond(g) => Formula::diamond(g.substitute(map)),
            Formula::Forall(g) => Formula::forall(g.substitute(map)),
        }
    }

    /// Minimal-parenthesis rendering; `parse(render(f))` rebuilds `f` exactly.
    pub fn render(&self) -> String {
        let mut out = String::new();
        render_into(self, 0, &mut out);
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// How a node is displayed: the renderer folds recognizable desugared shapes
/// back into `|`, `->`, `[]`, `E`. All of these re-desugar to the original tree.
enum View<'a> {
    Var(u32),
    And(&'a Formula, &'a Formula),
    Or(&'a Formula, &'a Formula),
    Imp(&'a Formula, &'a Formula),
    Not(&'a Formula),
    Diamond(&'a Formula),
    Boxed(&'a Formula),
    Forall(&'a Formula),
    Exists(&'a Formula),
}

fn view(f: &Formula) -> View<'_> {
    match f {
        Formula::Var(i) => View::Var(*i),
        Formula::And(l, r) => View::And(l, r),
        Formula::Diamond(g) => View::Diamond(g),
        Formula::Forall(g) => View::Forall(g),
        Formula::Not(inner) => match &**inner {
            Formula::Diamond(g) => {
                if let Formula::Not(h) = &**g {
                    View::Boxed(h)
                } else {
                    View::Not(inner)
                }
            }
            Formula::Forall(g) => {
                if let Formula::Not(h) = &**g {
                    View::Exists(h)
                } else {
                    View::Not(inner)
                }
            }
            Formula::And(l, r) => match (&**l, &**r) {
                (Formula::Not(a), Formula::Not(b)) => View::Or(a, b),
                (_, Formula::Not(b)) => View::Imp(l, b),
                _ => View::Not(inner),
            },
            _ => View::Not(inner),
        },
    }
}

// Binding strength: `<->` 1, `->` 2, `|` 3, `&` 4, unary 5, atoms 6.
fn view_prec(v: &View<'_>) -> u8 {
    match v {
        View::Var(_) => 6,
        View::Not(_) | View::Diamond(_) | View::Boxed(_) | View::Forall(_) | View::Exists(_) => 5,
        View::And(..) => 4,
        View::Or(..) => 3,
        View::Imp(..) => 2,
    }
}

fn render_into(f: &Formula, min: u8, out: &mut String) {
    let v = view(f);
    let p = view_prec(&v);
    if p < min {
        out.push('(');
        render_into(f, 0, out);
        out.push(')');
        return;
    }
    match v {
        View::Var(i) => {
            out.push('p');
            out.push_str(&alloc::format!("{i}"));
        }
        View::And(l, r) => {
            render_into(l, 4, out);
            out.push_str(" & ");
            render_into(r, 5, out);
        }
        View::Or(l, r) => {
            render_into(l, 3, out);
            out.push_str(" | ");
            render_into(r, 4, out);
        }
        View::Imp(l, r) => {
            render_into(l, 3, out);
            out.push_str(" -> ");
            render_into(r, 2, out);
        }
        View::Not(g) => {
            out.push('~');
            render_into(g, 5, out);
        }
        View::Diamond(g) => {
            out.push_str("<>");
            render_into(g, 5, out);
        }
        View::Boxed(g) => {
            out.push_str("[]");
            render_into(g, 5, out);
        }
        View::Forall(g) => {
            out.push('A');
            render_into(g, 5, out);
        }
        View::Exists(g) => {
            out.push('E');
            render_into(g, 5, out);
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AxiomError {
    UnknownAxiom(String),
    BdRequiresN,
    BdZero,
}

impl fmt::Display for AxiomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomError::UnknownAxiom(name) => write!(f, "unknown axiom name `{name}`"),
            AxiomError::BdRequiresN => write!(f, "axiom `bd` needs a depth parameter n"),
            AxiomError::BdZero => write!(f, "axiom `bd` needs n >= 1"),
        }
    }
}

impl core::error::Error for AxiomError {}

/// The bounded-alternative axiom: `<>p1 & ... & <>p_{n+1} -> OR_{i<j} <>(p_i & p_j)`.
pub fn bd(n: u32) -> Formula {
    assert!(n >= 1, "bd needs n >= 1");
    let p = |i: u32| Formula::var(i);
    let mut ante = Formula::diamond(p(1));
    for i in 2..=n + 1 {
        ante = Formula::and(ante, Formula::diamond(p(i)));
    }
    let mut cons: Option<Formula> = None;
    for i in 1..=n + 1 {
        for j in i + 1..=n + 1 {
            let d = Formula::diamond(Formula::and(p(i), p(j)));
            cons = Some(match cons {
                None => d,
                Some(c) => Formula::or(c, d),
            });
        }
    }
    Formula::imp(ante, cons.expect("n >= 1 gives at least one pair"))
}

/// Named axioms. `n` is consulted only by `bd`.
///
/// Names: `M`, `T`, `4`, `N`, `5`, `bd`, `shehtman`, `s5u-connect`.
/// Variables follow the p1, p2, ... convention (p0 appears only inside the
/// bottom constant used by `N`).
pub fn axiom_library(name: &str, n: Option<u32>) -> Result<Formula, AxiomError> {
    let p = |i: u32| Formula::var(i);
    match name {
        "M" => Ok(Formula::imp(
            Formula::diamond(Formula::or(p(1), p(2))),
            Formula::or(Formula::diamond(p(1)), Formula::diamond(p(2))),
        )),
        "T" => Ok(Formula::imp(p(1), Formula::diamond(p(1)))),
        "4" => Ok(Formula::imp(
            Formula::diamond(Formula::diamond(p(1))),
            Formula::diamond(p(1)),
        )),
        "N" => Ok(Formula::not(Formula::diamond(Formula::bot()))),
        "5" => Ok(Formula::imp(
            Formula::diamond(p(1)),
            Formula::bx(Formula::diamond(p(1))),
        )),
        "bd" => match n {
            None => Err(AxiomError::BdRequiresN),
            Some(0) => Err(AxiomError::BdZero),
            Some(n) => Ok(bd(n)),
        },
        "shehtman" => Ok(Formula::imp(
            Formula::forall(Formula::or(Formula::bx(p(1)), Formula::bx(Formula::not(p(1))))),
            Formula::or(Formula::forall(p(1)), Formula::forall(Formula::not(p(1)))),
        )),
        "s5u-connect" => Ok(Formula::imp(Formula::diamond(p(1)), Formula::exists(p(1)))),
        other => Err(AxiomError::UnknownAxiom(String::from(other))),
    }
}
