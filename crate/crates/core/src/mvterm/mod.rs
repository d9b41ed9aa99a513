//! MV-terms over positional variables `x1..xn`.
//!
//! A [`Term`] is an immutable, reference-counted tree. Subterms may be
//! shared, which the term synthesizer relies on heavily; every traversal in
//! this crate memoizes on node identity so shared subterms are visited once.

mod parse;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::geometry::RationalPoint;
use crate::rational::Q;

pub use parse::parse_term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at column {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable x{index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("point has dimension {point} but the term uses x{needed}")]
    DimensionMismatch { point: usize, needed: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    /// Truncated sum `⊕`.
    OPlus,
    /// `⊙`, i.e. `¬(¬a ⊕ ¬b)`.
    OTimes,
    Meet,
    Join,
    /// Truncated subtraction `a ⊖ b = max(0, a - b)`.
    TruncSub,
    Implies,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::OPlus => "+",
            BinOp::OTimes => ".",
            BinOp::Meet => "/\\",
            BinOp::Join => "\\/",
            BinOp::TruncSub => "-",
            BinOp::Implies => "->",
        }
    }

    pub fn apply(self, a: &Q, b: &Q) -> Q {
        let one = Q::one();
        let zero = Q::zero();
        match self {
            BinOp::OPlus => (a + b).min(one),
            BinOp::OTimes => (a + b - one).max(zero),
            BinOp::Meet => a.clone().min(b.clone()),
            BinOp::Join => a.clone().max(b.clone()),
            BinOp::TruncSub => (a - b).max(zero),
            BinOp::Implies => (one.clone() - a + b).min(one),
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub enum TermNode {
    Zero,
    One,
    /// 1-based variable index.
    Var(usize),
    Neg(Term),
    Bin(BinOp, Term, Term),
}

/// Shared handle to an immutable term node.
#[derive(Clone, Eq)]
pub struct Term(Arc<TermNode>);

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({})", self)
    }
}

impl Term {
    pub fn node(&self) -> &TermNode {
        &self.0
    }

    pub(crate) fn id(&self) -> *const TermNode {
        Arc::as_ptr(&self.0)
    }

    pub fn zero() -> Term {
        Term(Arc::new(TermNode::Zero))
    }

    pub fn one() -> Term {
        Term(Arc::new(TermNode::One))
    }

    /// Panics on index 0; variables are 1-based.
    pub fn var(index: usize) -> Term {
        assert!(index >= 1, "variables are 1-based");
        Term(Arc::new(TermNode::Var(index)))
    }

    pub fn neg(t: Term) -> Term {
        Term(Arc::new(TermNode::Neg(t)))
    }

    pub fn bin(op: BinOp, a: Term, b: Term) -> Term {
        Term(Arc::new(TermNode::Bin(op, a, b)))
    }

    pub fn oplus(a: Term, b: Term) -> Term {
        Term::bin(BinOp::OPlus, a, b)
    }

    pub fn otimes(a: Term, b: Term) -> Term {
        Term::bin(BinOp::OTimes, a, b)
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::bin(BinOp::Meet, a, b)
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::bin(BinOp::Join, a, b)
    }

    pub fn trunc_sub(a: Term, b: Term) -> Term {
        Term::bin(BinOp::TruncSub, a, b)
    }

    pub fn implies(a: Term, b: Term) -> Term {
        Term::bin(BinOp::Implies, a, b)
    }

    /// Folds a non-empty list with a binary connective; `empty` is returned
    /// for an empty list.
    pub fn fold(op: BinOp, terms: impl IntoIterator<Item = Term>, empty: Term) -> Term {
        let mut items: Vec<Term> = terms.into_iter().collect();
        if items.is_empty() {
            return empty;
        }
        // balanced, so that long joins do not produce deep trees
        while items.len() > 1 {
            let mut next = Vec::with_capacity(items.len().div_ceil(2));
            let mut it = items.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(Term::bin(op, a, b)),
                    None => next.push(a),
                }
            }
            items = next;
        }
        items.pop().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.node(), TermNode::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self.node(), TermNode::One)
    }

    /// Largest variable index occurring in the term (0 if none).
    pub fn max_var(&self) -> usize {
        let mut memo = HashMap::new();
        max_var_rec(self, &mut memo)
    }

    pub fn check_arity(&self, arity: usize) -> Result<(), TermError> {
        let m = self.max_var();
        if m > arity {
            Err(TermError::VariableOutOfRange { index: m, arity })
        } else {
            Ok(())
        }
    }

    /// Number of distinct nodes (shared subterms counted once).
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(t) = stack.pop() {
            if !seen.insert(t.id()) {
                continue;
            }
            match t.node() {
                TermNode::Neg(a) => stack.push(a.clone()),
                TermNode::Bin(_, a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                _ => {}
            }
        }
        seen.len()
    }

    /// Rewrites into the core signature `{0, ⊕, ¬}`.
    pub fn desugar(&self) -> Term {
        let mut memo = HashMap::new();
        desugar_rec(self, &mut memo)
    }

    pub fn is_core(&self) -> bool {
        match self.node() {
            TermNode::Zero | TermNode::Var(_) => true,
            TermNode::One => false,
            TermNode::Neg(a) => a.is_core(),
            TermNode::Bin(BinOp::OPlus, a, b) => a.is_core() && b.is_core(),
            TermNode::Bin(..) => false,
        }
    }

    /// Replaces `x_i` by `subst[i-1]`. Shared subterms stay shared.
    pub fn substitute(&self, subst: &[Term]) -> Term {
        let mut memo = HashMap::new();
        subst_rec(self, subst, &mut memo)
    }
}

fn max_var_rec(t: &Term, memo: &mut HashMap<*const TermNode, usize>) -> usize {
    if let Some(&m) = memo.get(&t.id()) {
        return m;
    }
    let m = match t.node() {
        TermNode::Zero | TermNode::One => 0,
        TermNode::Var(i) => *i,
        TermNode::Neg(a) => max_var_rec(a, memo),
        TermNode::Bin(_, a, b) => max_var_rec(a, memo).max(max_var_rec(b, memo)),
    };
    memo.insert(t.id(), m);
    m
}

fn desugar_rec(t: &Term, memo: &mut HashMap<*const TermNode, Term>) -> Term {
    if let Some(d) = memo.get(&t.id()) {
        return d.clone();
    }
    let d = match t.node() {
        TermNode::Zero | TermNode::Var(_) => t.clone(),
        TermNode::One => Term::neg(Term::zero()),
        TermNode::Neg(a) => Term::neg(desugar_rec(a, memo)),
        TermNode::Bin(op, a, b) => {
            let a = desugar_rec(a, memo);
            let b = desugar_rec(b, memo);
            match op {
                BinOp::OPlus => Term::oplus(a, b),
                BinOp::OTimes => Term::neg(Term::oplus(Term::neg(a), Term::neg(b))),
                BinOp::TruncSub => Term::neg(Term::oplus(Term::neg(a), b)),
                BinOp::Implies => Term::oplus(Term::neg(a), b),
                // a ⊙ (¬a ⊕ b)
                BinOp::Meet => {
                    let na = Term::neg(a);
                    Term::neg(Term::oplus(na.clone(), Term::neg(Term::oplus(na, b))))
                }
                // (a ⊖ b) ⊕ b
                BinOp::Join => {
                    Term::oplus(Term::neg(Term::oplus(Term::neg(a), b.clone())), b)
                }
            }
        }
    };
    memo.insert(t.id(), d.clone());
    d
}

fn subst_rec(t: &Term, subst: &[Term], memo: &mut HashMap<*const TermNode, Term>) -> Term {
    if let Some(d) = memo.get(&t.id()) {
        return d.clone();
    }
    let d = match t.node() {
        TermNode::Zero | TermNode::One => t.clone(),
        TermNode::Var(i) => subst.get(i - 1).cloned().unwrap_or_else(|| t.clone()),
        TermNode::Neg(a) => Term::neg(subst_rec(a, subst, memo)),
        TermNode::Bin(op, a, b) => {
            Term::bin(*op, subst_rec(a, subst, memo), subst_rec(b, subst, memo))
        }
    };
    memo.insert(t.id(), d.clone());
    d
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            TermNode::Zero => write!(f, "0"),
            TermNode::One => write!(f, "1"),
            TermNode::Var(i) => write!(f, "x{}", i),
            TermNode::Neg(a) => write!(f, "~{}", a),
            TermNode::Bin(op, a, b) => write!(f, "({}{}{})", a, op.symbol(), b),
        }
    }
}

/// Fully parenthesized rendering; `parse_term` reads it back to the same tree.
pub fn print_term(t: &Term) -> String {
    t.to_string()
}

/// Exact value of the McNaughton function of `t` at `x`.
pub fn eval_term(t: &Term, x: &RationalPoint) -> Result<Q, TermError> {
    let needed = t.max_var();
    if needed > x.dim() {
        return Err(TermError::DimensionMismatch {
            point: x.dim(),
            needed,
        });
    }
    let mut memo = HashMap::new();
    Ok(eval_rec(t, x.coords(), &mut memo))
}

fn eval_rec(t: &Term, x: &[Q], memo: &mut HashMap<*const TermNode, Q>) -> Q {
    if let Some(v) = memo.get(&t.id()) {
        return v.clone();
    }
    let v = match t.node() {
        TermNode::Zero => Q::zero(),
        TermNode::One => Q::one(),
        TermNode::Var(i) => x[i - 1].clone(),
        TermNode::Neg(a) => Q::one() - eval_rec(a, x, memo),
        TermNode::Bin(op, a, b) => {
            let va = eval_rec(a, x, memo);
            let vb = eval_rec(b, x, memo);
            op.apply(&va, &vb)
        }
    };
    memo.insert(t.id(), v.clone());
    v
}
