use std::collections::HashMap;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::geometry::polytope::{bboxes_overlap, Polytope};
use crate::geometry::{pull_triangulate, Complex, RationalPoint, Simplex};
use crate::mvterm::{BinOp, Term, TermError, TermNode};
use crate::rational::Q;

use super::{LinearForm, PwlFunction};

#[derive(Clone)]
struct Cell {
    poly: Polytope,
    bbox: (Vec<Q>, Vec<Q>),
    form: LinearForm,
}

impl Cell {
    fn new(poly: Polytope, form: LinearForm) -> Self {
        let bbox = poly.bbox();
        Cell { poly, bbox, form }
    }
}

type Cells = Rc<Vec<Cell>>;

/// Exact piecewise-linear semantics of `t` on `[0,1]^n`.
pub fn compile(t: &Term, n: usize) -> Result<PwlFunction, TermError> {
    t.check_arity(n)?;
    let mut memo = HashMap::new();
    let cells = cells_of(t, n, &mut memo);
    let mut simplexes = Vec::new();
    let mut forms: HashMap<Simplex, LinearForm> = HashMap::new();
    for c in cells.iter() {
        for pts in pull_triangulate(&c.poly) {
            let s = Simplex::from_unchecked(pts.into_iter().map(RationalPoint::from_vec).collect());
            forms.insert(s.clone(), c.form.clone());
            simplexes.push(s);
        }
    }
    let carrier = Complex::from_simplexes(n, simplexes);
    let pieces = carrier.maximal().iter().map(|s| forms[s].clone()).collect();
    Ok(PwlFunction::new(carrier, pieces).expect("one piece per simplex"))
}

fn cells_of(t: &Term, n: usize, memo: &mut HashMap<*const TermNode, Cells>) -> Cells {
    if let Some(c) = memo.get(&t.id()) {
        return c.clone();
    }
    let whole = |form: LinearForm| Rc::new(vec![Cell::new(Polytope::cube(n), form)]);
    let out = match t.node() {
        TermNode::Zero => whole(LinearForm::constant(n, Q::zero())),
        TermNode::One => whole(LinearForm::constant(n, Q::one())),
        TermNode::Var(i) => whole(LinearForm::coordinate(n, i - 1)),
        TermNode::Neg(a) => {
            let a = cells_of(a, n, memo);
            Rc::new(
                a.iter()
                    .map(|c| Cell {
                        form: c.form.complement(),
                        ..c.clone()
                    })
                    .collect(),
            )
        }
        TermNode::Bin(op, a, b) => {
            let a = cells_of(a, n, memo);
            let b = cells_of(b, n, memo);
            Rc::new(combine(*op, &a, &b, n))
        }
    };
    memo.insert(t.id(), out.clone());
    out
}

/// For `op(f, g)`: the breakpoint form `h` and the results on `h >= 0` and
/// `h <= 0`.
fn breakpoint(op: BinOp, f: &LinearForm, g: &LinearForm) -> (LinearForm, LinearForm, LinearForm) {
    let n = f.dim();
    let zero = LinearForm::constant(n, Q::zero());
    let one = LinearForm::constant(n, Q::one());
    match op {
        BinOp::OPlus => {
            let s = f.add(g);
            (s.complement(), s, one)
        }
        BinOp::OTimes => {
            let s = f.add(g).plus_constant(&-Q::one());
            (s.clone(), s, zero)
        }
        BinOp::Meet => (g.sub(f), f.clone(), g.clone()),
        BinOp::Join => (f.sub(g), f.clone(), g.clone()),
        BinOp::TruncSub => {
            let d = f.sub(g);
            (d.clone(), d, zero)
        }
        BinOp::Implies => (f.sub(g), g.sub(f).plus_constant(&Q::one()), one),
    }
}

fn combine(op: BinOp, a: &[Cell], b: &[Cell], n: usize) -> Vec<Cell> {
    let mut out = Vec::new();
    for ca in a {
        for cb in b {
            if !bboxes_overlap(&ca.bbox, &cb.bbox) {
                continue;
            }
            let p = if a.len() == 1 && ca.poly.vertices().len() == 1 << n {
                Some(cb.poly.clone())
            } else if b.len() == 1 && cb.poly.vertices().len() == 1 << n {
                Some(ca.poly.clone())
            } else {
                ca.poly.intersect(&cb.poly)
            };
            let Some(p) = p else { continue };
            if p.dim() != n as isize {
                continue;
            }
            let (h, pos, neg) = breakpoint(op, &ca.form, &cb.form);
            let (hp, hn) = p.split(&h.nonnegative());
            match (hp, hn) {
                (Some(x), Some(y)) if !h.is_constant() => {
                    if x.dim() == n as isize {
                        out.push(Cell::new(x, pos));
                    }
                    if y.dim() == n as isize {
                        out.push(Cell::new(y, neg));
                    }
                }
                (Some(x), _) => out.push(Cell::new(x, pos)),
                (None, Some(y)) => out.push(Cell::new(y, neg)),
                (None, None) => {}
            }
        }
    }
    out
}
