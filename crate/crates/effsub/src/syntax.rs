//! Abstract syntax shared by all four calculi: the two source languages,
//! the two coercion target flavors, and the types that classify them.
//!
//! Terms carry binder names for readable output; α-equivalence goes through
//! a canonical nameless (de Bruijn) form, so it is plain structural equality
//! on that form.

use std::collections::BTreeSet;

pub type Name = String;

/// Binary primitive operations on naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimOp {
    Add,
    Mul,
}

impl PrimOp {
    pub fn apply(self, a: u64, b: u64) -> u64 {
        // Naturals are modeled as u64 with wrapping arithmetic.
        match self {
            PrimOp::Add => a.wrapping_add(b),
            PrimOp::Mul => a.wrapping_mul(b),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            PrimOp::Add => "+",
            PrimOp::Mul => "*",
        }
    }
}

/// Source terms. Covers both source calculi; the STLC pipeline rejects
/// `Shift0`/`Reset0` when it encounters them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SrcTerm {
    Var(Name),
    Lam(Name, Box<SrcTerm>),
    App(Box<SrcTerm>, Box<SrcTerm>),
    Fix(Name, Name, Box<SrcTerm>),
    Const(u64),
    Prim(PrimOp, Box<SrcTerm>, Box<SrcTerm>),
    Shift0(Name, Box<SrcTerm>),
    Reset0(Box<SrcTerm>),
}

/// Type coercions. `TopC` belongs to the STLC target; `Lift`/`Cons` to the
/// effect target. The split is enforced by flavored typechecking, not here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coercion {
    Id,
    /// `Comp(c1, c2)` is `c1 o c2`: `c2` converts first, then `c1`.
    Comp(Box<Coercion>, Box<Coercion>),
    TopC,
    /// `Arrow(arg, res)` converts a function contravariantly in its argument.
    Arrow(Box<Coercion>, Box<Coercion>),
    /// Turns a pure value into a continuation-expecting computation.
    Lift(Box<Coercion>),
    /// `Cons(carrier, cont, rest)` converts between effectful function types.
    Cons(Box<Coercion>, Box<Coercion>, Box<Coercion>),
}

/// Target terms, shared by both target flavors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TgtTerm {
    Var(Name),
    Lam(Name, Box<TgtTerm>),
    App(Box<TgtTerm>, Box<TgtTerm>),
    Fix(Name, Name, Box<TgtTerm>),
    Const(u64),
    Prim(PrimOp, Box<TgtTerm>, Box<TgtTerm>),
    CApp(Coercion, Box<TgtTerm>),
    Unit,
}

/// STLC source types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SrcTypeS {
    Nat,
    Top,
    Arrow(Box<SrcTypeS>, Box<SrcTypeS>),
}

/// Pure types of the effect calculus: `nat` or `τ -> T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PureTypeE {
    Nat,
    Arrow(Box<PureTypeE>, Box<TypeE>),
}

/// Types of the effect calculus: pure, or `[τ, T, U]` describing a
/// computation of carrier `τ` with answer type `T` and remainder `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeE {
    Pure(PureTypeE),
    Eff(PureTypeE, Box<TypeE>, Box<TypeE>),
}

impl TypeE {
    pub fn pure(p: PureTypeE) -> TypeE {
        TypeE::Pure(p)
    }

    pub fn as_pure(&self) -> Option<&PureTypeE> {
        match self {
            TypeE::Pure(p) => Some(p),
            TypeE::Eff(..) => None,
        }
    }
}

/// Target types for both flavors. `UnitT` is STLC-only; `EffArrow` is
/// effect-only (`[τ, T, U]` in concrete syntax).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TgtType {
    Nat,
    UnitT,
    Arrow(Box<TgtType>, Box<TgtType>),
    EffArrow(Box<TgtType>, Box<TgtType>, Box<TgtType>),
}

/// A typing environment: name-to-type bindings with shadowing, newest last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeEnv<T>(Vec<(Name, T)>);

impl<T> Default for TypeEnv<T> {
    fn default() -> Self {
        TypeEnv(Vec::new())
    }
}

impl<T: Clone> TypeEnv<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Name, T)>) -> Self {
        TypeEnv(pairs.into_iter().collect())
    }

    pub fn lookup(&self, name: &str) -> Option<&T> {
        self.0.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn extended(&self, name: impl Into<Name>, ty: T) -> Self {
        let mut next = self.clone();
        next.0.push((name.into(), ty));
        next
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &T)> {
        self.0.iter().map(|(n, t)| (n, t))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.0.iter().map(|(n, _)| n)
    }

    pub fn map_types<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> TypeEnv<U> {
        TypeEnv(self.0.iter().map(|(n, t)| (n.clone(), f(t))).collect())
    }
}

/// Canonical nameless form used for α-equivalence. Binder names are dropped;
/// bound occurrences become indices counting enclosing binders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nameless {
    Bound(usize),
    Free(Name),
    Lam(Box<Nameless>),
    App(Box<Nameless>, Box<Nameless>),
    /// Fix binds two variables (the function and its argument).
    Fix(Box<Nameless>),
    Const(u64),
    Prim(PrimOp, Box<Nameless>, Box<Nameless>),
    Shift0(Box<Nameless>),
    Reset0(Box<Nameless>),
    CApp(Coercion, Box<Nameless>),
    Unit,
}

fn lookup_index(stack: &[&str], name: &str) -> Option<usize> {
    stack.iter().rev().position(|n| *n == name)
}

pub fn canon_src(term: &SrcTerm) -> Nameless {
    fn go(term: &SrcTerm, stack: &mut Vec<&str>) -> Nameless {
        match term {
            SrcTerm::Var(x) => match lookup_index(stack, x) {
                Some(i) => Nameless::Bound(i),
                None => Nameless::Free(x.clone()),
            },
            SrcTerm::Lam(x, b) => {
                stack.push(x);
                let b = go(b, stack);
                stack.pop();
                Nameless::Lam(Box::new(b))
            }
            SrcTerm::App(f, a) => Nameless::App(Box::new(go(f, stack)), Box::new(go(a, stack))),
            SrcTerm::Fix(f, x, b) => {
                stack.push(f);
                stack.push(x);
                let b = go(b, stack);
                stack.pop();
                stack.pop();
                Nameless::Fix(Box::new(b))
            }
            SrcTerm::Const(n) => Nameless::Const(*n),
            SrcTerm::Prim(op, l, r) => {
                Nameless::Prim(*op, Box::new(go(l, stack)), Box::new(go(r, stack)))
            }
            SrcTerm::Shift0(k, b) => {
                stack.push(k);
                let b = go(b, stack);
                stack.pop();
                Nameless::Shift0(Box::new(b))
            }
            SrcTerm::Reset0(b) => Nameless::Reset0(Box::new(go(b, stack))),
        }
    }
    go(term, &mut Vec::new())
}

pub fn canon_tgt(term: &TgtTerm) -> Nameless {
    fn go(term: &TgtTerm, stack: &mut Vec<&str>) -> Nameless {
        match term {
            TgtTerm::Var(x) => match lookup_index(stack, x) {
                Some(i) => Nameless::Bound(i),
                None => Nameless::Free(x.clone()),
            },
            TgtTerm::Lam(x, b) => {
                stack.push(x);
                let b = go(b, stack);
                stack.pop();
                Nameless::Lam(Box::new(b))
            }
            TgtTerm::App(f, a) => Nameless::App(Box::new(go(f, stack)), Box::new(go(a, stack))),
            TgtTerm::Fix(f, x, b) => {
                stack.push(f);
                stack.push(x);
                let b = go(b, stack);
                stack.pop();
                stack.pop();
                Nameless::Fix(Box::new(b))
            }
            TgtTerm::Const(n) => Nameless::Const(*n),
            TgtTerm::Prim(op, l, r) => {
                Nameless::Prim(*op, Box::new(go(l, stack)), Box::new(go(r, stack)))
            }
            TgtTerm::CApp(c, b) => Nameless::CApp(c.clone(), Box::new(go(b, stack))),
            TgtTerm::Unit => Nameless::Unit,
        }
    }
    go(term, &mut Vec::new())
}

pub fn alpha_eq_src(a: &SrcTerm, b: &SrcTerm) -> bool {
    canon_src(a) == canon_src(b)
}

pub fn alpha_eq_tgt(a: &TgtTerm, b: &TgtTerm) -> bool {
    canon_tgt(a) == canon_tgt(b)
}

pub fn free_vars_src(term: &SrcTerm) -> BTreeSet<Name> {
    fn go(term: &SrcTerm, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match term {
            SrcTerm::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            SrcTerm::Lam(x, b) | SrcTerm::Shift0(x, b) => {
                bound.push(x.clone());
                go(b, bound, out);
                bound.pop();
            }
            SrcTerm::App(f, a) => {
                go(f, bound, out);
                go(a, bound, out);
            }
            SrcTerm::Fix(f, x, b) => {
                bound.push(f.clone());
                bound.push(x.clone());
                go(b, bound, out);
                bound.pop();
                bound.pop();
            }
            SrcTerm::Const(_) => {}
            SrcTerm::Prim(_, l, r) => {
                go(l, bound, out);
                go(r, bound, out);
            }
            SrcTerm::Reset0(b) => go(b, bound, out),
        }
    }
    let mut out = BTreeSet::new();
    go(term, &mut Vec::new(), &mut out);
    out
}

pub fn free_vars_tgt(term: &TgtTerm) -> BTreeSet<Name> {
    fn go(term: &TgtTerm, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match term {
            TgtTerm::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            TgtTerm::Lam(x, b) => {
                bound.push(x.clone());
                go(b, bound, out);
                bound.pop();
            }
            TgtTerm::App(f, a) => {
                go(f, bound, out);
                go(a, bound, out);
            }
            TgtTerm::Fix(f, x, b) => {
                bound.push(f.clone());
                bound.push(x.clone());
                go(b, bound, out);
                bound.pop();
                bound.pop();
            }
            TgtTerm::Const(_) => {}
            TgtTerm::Prim(_, l, r) => {
                go(l, bound, out);
                go(r, bound, out);
            }
            TgtTerm::CApp(_, b) => go(b, bound, out),
            TgtTerm::Unit => {}
        }
    }
    let mut out = BTreeSet::new();
    go(term, &mut Vec::new(), &mut out);
    out
}

/// Picks a name based on `base` that does not occur in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<Name>) -> Name {
    if !avoid.contains(base) {
        return base.to_string();
    }
    for i in 1u64.. {
        let candidate = format!("{base}{i}");
        if !avoid.contains(&candidate) {
            return candidate;
        }
    }
    unreachable!()
}

/// Capture-avoiding substitution `e[x := v]` on source terms. Binders that
/// would capture a free variable of `v` are renamed first.
pub fn subst_src(term: &SrcTerm, x: &str, v: &SrcTerm) -> SrcTerm {
    let fv = free_vars_src(v);
    fn go(term: &SrcTerm, x: &str, v: &SrcTerm, fv: &BTreeSet<Name>) -> SrcTerm {
        match term {
            SrcTerm::Var(y) => {
                if y == x {
                    v.clone()
                } else {
                    term.clone()
                }
            }
            SrcTerm::Lam(y, b) => {
                if y == x {
                    term.clone()
                } else if fv.contains(y) {
                    let mut avoid = fv.clone();
                    avoid.extend(free_vars_src(b));
                    avoid.insert(x.to_string());
                    let y2 = fresh_name(y, &avoid);
                    let b2 = go(&rename_src(b, y, &y2), x, v, fv);
                    SrcTerm::Lam(y2, Box::new(b2))
                } else {
                    SrcTerm::Lam(y.clone(), Box::new(go(b, x, v, fv)))
                }
            }
            SrcTerm::Shift0(y, b) => {
                if y == x {
                    term.clone()
                } else if fv.contains(y) {
                    let mut avoid = fv.clone();
                    avoid.extend(free_vars_src(b));
                    avoid.insert(x.to_string());
                    let y2 = fresh_name(y, &avoid);
                    let b2 = go(&rename_src(b, y, &y2), x, v, fv);
                    SrcTerm::Shift0(y2, Box::new(b2))
                } else {
                    SrcTerm::Shift0(y.clone(), Box::new(go(b, x, v, fv)))
                }
            }
            SrcTerm::Fix(f, y, b) => {
                if f == x || y == x {
                    term.clone()
                } else if fv.contains(f) || fv.contains(y) {
                    let mut avoid = fv.clone();
                    avoid.extend(free_vars_src(b));
                    avoid.insert(x.to_string());
                    let f2 = fresh_name(f, &avoid);
                    avoid.insert(f2.clone());
                    let y2 = fresh_name(y, &avoid);
                    let b2 = rename_src(&rename_src(b, f, &f2), y, &y2);
                    SrcTerm::Fix(f2, y2, Box::new(go(&b2, x, v, fv)))
                } else {
                    SrcTerm::Fix(f.clone(), y.clone(), Box::new(go(b, x, v, fv)))
                }
            }
            SrcTerm::App(f, a) => SrcTerm::App(Box::new(go(f, x, v, fv)), Box::new(go(a, x, v, fv))),
            SrcTerm::Const(_) => term.clone(),
            SrcTerm::Prim(op, l, r) => {
                SrcTerm::Prim(*op, Box::new(go(l, x, v, fv)), Box::new(go(r, x, v, fv)))
            }
            SrcTerm::Reset0(b) => SrcTerm::Reset0(Box::new(go(b, x, v, fv))),
        }
    }
    go(term, x, v, &fv)
}

/// Renames free occurrences of `from` to `to`. `to` must be fresh for the term.
fn rename_src(term: &SrcTerm, from: &str, to: &str) -> SrcTerm {
    subst_src(term, from, &SrcTerm::Var(to.to_string()))
}

/// Capture-avoiding substitution on target terms.
pub fn subst_tgt(term: &TgtTerm, x: &str, v: &TgtTerm) -> TgtTerm {
    let fv = free_vars_tgt(v);
    fn go(term: &TgtTerm, x: &str, v: &TgtTerm, fv: &BTreeSet<Name>) -> TgtTerm {
        match term {
            TgtTerm::Var(y) => {
                if y == x {
                    v.clone()
                } else {
                    term.clone()
                }
            }
            TgtTerm::Lam(y, b) => {
                if y == x {
                    term.clone()
                } else if fv.contains(y) {
                    let mut avoid = fv.clone();
                    avoid.extend(free_vars_tgt(b));
                    avoid.insert(x.to_string());
                    let y2 = fresh_name(y, &avoid);
                    let b2 = go(&rename_tgt(b, y, &y2), x, v, fv);
                    TgtTerm::Lam(y2, Box::new(b2))
                } else {
                    TgtTerm::Lam(y.clone(), Box::new(go(b, x, v, fv)))
                }
            }
            TgtTerm::Fix(f, y, b) => {
                if f == x || y == x {
                    term.clone()
                } else if fv.contains(f) || fv.contains(y) {
                    let mut avoid = fv.clone();
                    avoid.extend(free_vars_tgt(b));
                    avoid.insert(x.to_string());
                    let f2 = fresh_name(f, &avoid);
                    avoid.insert(f2.clone());
                    let y2 = fresh_name(y, &avoid);
                    let b2 = rename_tgt(&rename_tgt(b, f, &f2), y, &y2);
                    TgtTerm::Fix(f2, y2, Box::new(go(&b2, x, v, fv)))
                } else {
                    TgtTerm::Fix(f.clone(), y.clone(), Box::new(go(b, x, v, fv)))
                }
            }
            TgtTerm::App(f, a) => TgtTerm::App(Box::new(go(f, x, v, fv)), Box::new(go(a, x, v, fv))),
            TgtTerm::Const(_) | TgtTerm::Unit => term.clone(),
            TgtTerm::Prim(op, l, r) => {
                TgtTerm::Prim(*op, Box::new(go(l, x, v, fv)), Box::new(go(r, x, v, fv)))
            }
            TgtTerm::CApp(c, b) => TgtTerm::CApp(c.clone(), Box::new(go(b, x, v, fv))),
        }
    }
    go(term, x, v, &fv)
}

fn rename_tgt(term: &TgtTerm, from: &str, to: &str) -> TgtTerm {
    subst_tgt(term, from, &TgtTerm::Var(to.to_string()))
}

/// Value predicate for source terms: variables, abstractions and constants.
pub fn is_value_src(term: &SrcTerm) -> bool {
    matches!(
        term,
        SrcTerm::Var(_) | SrcTerm::Lam(..) | SrcTerm::Fix(..) | SrcTerm::Const(_)
    )
}

/// Value predicate for target terms. Coerced values under an arrow, lift or
/// cons coercion are values; under id, composition or top they are redexes.
pub fn is_value_tgt(term: &TgtTerm) -> bool {
    match term {
        TgtTerm::Var(_)
        | TgtTerm::Lam(..)
        | TgtTerm::Fix(..)
        | TgtTerm::Const(_)
        | TgtTerm::Unit => true,
        TgtTerm::CApp(c, body) => {
            matches!(c, Coercion::Arrow(..) | Coercion::Lift(_) | Coercion::Cons(..))
                && is_value_tgt(body)
        }
        _ => false,
    }
}

// Convenience constructors, used heavily by the translators and tests.

pub fn svar(x: &str) -> SrcTerm {
    SrcTerm::Var(x.to_string())
}

pub fn slam(x: &str, b: SrcTerm) -> SrcTerm {
    SrcTerm::Lam(x.to_string(), Box::new(b))
}

pub fn sapp(f: SrcTerm, a: SrcTerm) -> SrcTerm {
    SrcTerm::App(Box::new(f), Box::new(a))
}

pub fn tvar(x: &str) -> TgtTerm {
    TgtTerm::Var(x.to_string())
}

pub fn tlam(x: &str, b: TgtTerm) -> TgtTerm {
    TgtTerm::Lam(x.to_string(), Box::new(b))
}

pub fn tapp(f: TgtTerm, a: TgtTerm) -> TgtTerm {
    TgtTerm::App(Box::new(f), Box::new(a))
}

pub fn tcapp(c: Coercion, b: TgtTerm) -> TgtTerm {
    TgtTerm::CApp(c, Box::new(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{parse_src_term, parse_tgt_term};

    fn st(s: &str) -> SrcTerm {
        parse_src_term(s).unwrap()
    }

    fn tt(s: &str) -> TgtTerm {
        parse_tgt_term(s).unwrap()
    }

    #[test]
    fn subst_variable_hit() {
        assert_eq!(subst_src(&st("x"), "x", &st("1")), st("1"));
    }

    #[test]
    fn subst_descends_homomorphically() {
        let result = subst_src(&st(r"\y. x y"), "x", &st(r"\z. z"));
        assert_eq!(result, st(r"\y. (\z. z) y"));
    }

    #[test]
    fn subst_respects_shadowing() {
        assert_eq!(subst_src(&st(r"\x. x"), "x", &st("1")), st(r"\x. x"));
    }

    #[test]
    fn subst_renames_capturing_binder() {
        // open v, exercises the freshening path
        let result = subst_src(&st(r"\y. x"), "x", &st("y"));
        assert!(alpha_eq_src(&result, &st(r"\y1. y")));
        assert!(free_vars_src(&result).contains("y"));
    }

    #[test]
    fn alpha_eq_examples() {
        assert!(alpha_eq_src(&st(r"\x. x"), &st(r"\y. y")));
        assert!(!alpha_eq_src(&st(r"\x. \y. x"), &st(r"\a. \b. b")));
        assert!(alpha_eq_src(&st("fix f x. f x"), &st("fix g y. g y")));
    }

    #[test]
    fn closed_subst_leaves_no_occurrence() {
        let e = st(r"\y. x y (x 1)");
        let result = subst_src(&e, "x", &st(r"\z. z"));
        assert!(!free_vars_src(&result).contains("x"));
    }

    #[test]
    fn value_grammar_for_targets() {
        assert!(is_value_tgt(&tt(r"[top -> id](\x. x)")));
        assert!(is_value_tgt(&tt("[lift id]7")));
        assert!(is_value_tgt(&tt("[(id, id, id)]7")));
        assert!(!is_value_tgt(&tt("[id]7")));
        assert!(!is_value_tgt(&tt("[id o id]7")));
        assert!(!is_value_tgt(&tt("[top]7")));
        assert!(is_value_tgt(&tt("()")));
        // non-value body under a value-forming coercion
        assert!(!is_value_tgt(&tt(r"[lift id]([id]7)")));
    }

    #[test]
    fn fresh_name_skips_collisions() {
        let avoid: BTreeSet<Name> = ["k".to_string(), "k1".to_string()].into();
        assert_eq!(fresh_name("k", &avoid), "k2");
        assert_eq!(fresh_name("f", &avoid), "f");
    }
}
