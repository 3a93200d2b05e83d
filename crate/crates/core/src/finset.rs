//! Finite sets, total functions between them, and the finite limits used
//! by the internal-category constructions.
//!
//! Every limit labels its elements with the tuple of components that
//! defines it and lists them in lexicographic label order, so two runs of
//! the same construction produce byte-identical tables.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::FinSetError;

type Result<T> = std::result::Result<T, FinSetError>;

/// Element label. Limits produce `Tuple` labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Sym(String),
    Tuple(Vec<Label>),
}

impl Label {
    pub fn sym(s: impl Into<String>) -> Label {
        Label::Sym(s.into())
    }

    pub fn pair(a: Label, b: Label) -> Label {
        Label::Tuple(vec![a, b])
    }

    pub fn triple(a: Label, b: Label, c: Label) -> Label {
        Label::Tuple(vec![a, b, c])
    }

    /// Components of a tuple label.
    pub fn components(&self) -> Option<&[Label]> {
        match self {
            Label::Tuple(items) => Some(items),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Sym(s) => f.write_str(s),
            Label::Tuple(items) => {
                f.write_str("(")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Sym(s.to_string())
    }
}

impl From<i64> for Label {
    fn from(n: i64) -> Self {
        Label::Int(n)
    }
}

struct SetInner {
    elements: Vec<Label>,
    index: HashMap<Label, usize>,
    digest: u64,
}

fn digest(elements: &[Label]) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    elements.hash(&mut h);
    h.finish()
}

/// A finite set of pairwise distinct labels. Cheap to clone.
#[derive(Clone)]
pub struct FinSetObj {
    inner: Arc<SetInner>,
}

impl FinSetObj {
    pub fn new(elements: Vec<Label>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (k, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), k).is_some() {
                return Err(FinSetError::DuplicateLabel(e.clone()));
            }
        }
        Ok(FinSetObj {
            inner: Arc::new(SetInner {
                digest: digest(&elements),
                elements,
                index,
            }),
        })
    }

    /// `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Self {
        FinSetObj::new((0..n as i64).map(Label::Int).collect()).expect("distinct integers")
    }

    pub fn empty() -> Self {
        FinSetObj::range(0)
    }

    /// The one-element set `{*}`.
    pub fn terminal() -> Self {
        FinSetObj::new(vec![Label::sym("*")]).expect("single label")
    }

    pub fn from_syms<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        FinSetObj::new(names.into_iter().map(|s| Label::Sym(s.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.elements.is_empty()
    }

    pub fn elements(&self) -> &[Label] {
        &self.inner.elements
    }

    pub fn label(&self, k: usize) -> &Label {
        &self.inner.elements[k]
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.inner.index.get(label).copied()
    }

    pub fn require(&self, label: &Label) -> Result<usize> {
        self.position(label)
            .ok_or_else(|| FinSetError::UnknownLabel(label.clone()))
    }

    pub fn ptr_eq(&self, other: &FinSetObj) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

impl PartialEq for FinSetObj {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other)
            || (self.inner.digest == other.inner.digest && self.inner.elements == other.inner.elements)
    }
}

impl Eq for FinSetObj {}

impl Hash for FinSetObj {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.inner.digest);
    }
}

impl PartialOrd for FinSetObj {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FinSetObj {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // smaller sets first, then lexicographic by labels
        if self.ptr_eq(other) {
            return std::cmp::Ordering::Equal;
        }
        self.len()
            .cmp(&other.len())
            .then_with(|| self.inner.elements.cmp(&other.inner.elements))
    }
}

impl fmt::Debug for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.elements().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for FinSetObj {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.inner.elements.serialize(s)
    }
}

/// A total function between finite sets, stored as a table of codomain
/// positions indexed by domain position.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinFn {
    dom: FinSetObj,
    cod: FinSetObj,
    table: Vec<usize>,
}

impl FinFn {
    pub fn new(dom: FinSetObj, cod: FinSetObj, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(FinSetError::NotTotal {
                expected: dom.len(),
                missing: dom.len().saturating_sub(table.len()),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= cod.len()) {
            return Err(FinSetError::OutOfRange {
                value: bad,
                size: cod.len(),
            });
        }
        Ok(FinFn { dom, cod, table })
    }

    /// Builds a function from `(input, output)` label pairs. Every domain
    /// element must appear exactly once.
    pub fn from_pairs<I>(dom: FinSetObj, cod: FinSetObj, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Label, Label)>,
    {
        let mut table = vec![usize::MAX; dom.len()];
        for (x, y) in pairs {
            let i = dom.require(&x)?;
            let j = cod.require(&y)?;
            if table[i] != usize::MAX && table[i] != j {
                return Err(FinSetError::ShapeMismatch(format!(
                    "element {x} is assigned twice"
                )));
            }
            table[i] = j;
        }
        let missing = table.iter().filter(|&&v| v == usize::MAX).count();
        if missing > 0 {
            return Err(FinSetError::NotTotal {
                expected: dom.len(),
                missing,
            });
        }
        Ok(FinFn { dom, cod, table })
    }

    pub fn from_fn(dom: FinSetObj, cod: FinSetObj, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = (0..dom.len()).map(f).collect();
        FinFn::new(dom, cod, table)
    }

    pub fn identity(set: &FinSetObj) -> Self {
        FinFn {
            dom: set.clone(),
            cod: set.clone(),
            table: (0..set.len()).collect(),
        }
    }

    pub fn constant(dom: &FinSetObj, cod: &FinSetObj, value: usize) -> Result<Self> {
        FinFn::new(dom.clone(), cod.clone(), vec![value; dom.len()])
    }

    /// The unique function into the terminal set.
    pub fn to_terminal(dom: &FinSetObj) -> Self {
        FinFn::constant(dom, &FinSetObj::terminal(), 0).expect("terminal has one element")
    }

    pub fn dom(&self) -> &FinSetObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinSetObj {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn apply_label(&self, x: &Label) -> Option<&Label> {
        self.dom.position(x).map(|i| self.cod.label(self.table[i]))
    }

    /// `g ∘ self`: first `self`, then `g`.
    pub fn then(&self, g: &FinFn) -> Result<FinFn> {
        if self.cod != g.dom {
            return Err(FinSetError::CodomainMismatch(format!(
                "cannot follow a map into {:?} by a map out of {:?}",
                self.cod, g.dom
            )));
        }
        Ok(FinFn {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            table: self.table.iter().map(|&y| g.table[y]).collect(),
        })
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinFn) -> Result<FinFn> {
        f.then(self)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &y in &self.table {
            if std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &y in &self.table {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    /// Domain positions mapped to `y`.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.table.len()).filter(|&x| self.table[x] == y).collect()
    }

    /// `(input label, output label)` pairs in domain order.
    pub fn pairs(&self) -> Vec<(Label, Label)> {
        self.table
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.dom.label(x).clone(), self.cod.label(y).clone()))
            .collect()
    }
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (x, y)) in self.pairs().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for FinFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

/// All functions `dom → cod`, in lexicographic table order.
pub fn all_functions(dom: &FinSetObj, cod: &FinSetObj) -> Vec<FinFn> {
    let n = dom.len();
    let m = cod.len();
    if n == 0 {
        return vec![FinFn::new(dom.clone(), cod.clone(), Vec::new()).expect("empty table")];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    loop {
        out.push(FinFn {
            dom: dom.clone(),
            cod: cod.clone(),
            table: table.clone(),
        });
        // increment, last position fastest
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            table[k] += 1;
            if table[k] < m {
                break;
            }
            table[k] = 0;
        }
    }
}

/// All functions `dom → cod` where element `x` may only go to
/// `choices[x]`, in lexicographic order.
pub fn constrained_functions(
    dom: &FinSetObj,
    cod: &FinSetObj,
    choices: &[Vec<usize>],
) -> Vec<FinFn> {
    debug_assert_eq!(choices.len(), dom.len());
    if choices.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    let n = dom.len();
    let mut out = Vec::new();
    let mut cursor = vec![0usize; n];
    loop {
        out.push(FinFn {
            dom: dom.clone(),
            cod: cod.clone(),
            table: (0..n).map(|x| choices[x][cursor[x]]).collect(),
        });
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < choices[k].len() {
                break;
            }
            cursor[k] = 0;
        }
    }
}

fn sorted_apex(mut rows: Vec<(Label, Vec<usize>)>) -> Result<(FinSetObj, Vec<Vec<usize>>)> {
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let (labels, comps): (Vec<Label>, Vec<Vec<usize>>) = rows.into_iter().unzip();
    Ok((FinSetObj::new(labels)?, comps))
}

/// Binary product with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub apex: FinSetObj,
    pub p1: FinFn,
    pub p2: FinFn,
    lookup: HashMap<(usize, usize), usize>,
}

pub fn product(a: &FinSetObj, b: &FinSetObj) -> Product {
    let mut rows = Vec::with_capacity(a.len() * b.len());
    for x in 0..a.len() {
        for y in 0..b.len() {
            rows.push((Label::pair(a.label(x).clone(), b.label(y).clone()), vec![x, y]));
        }
    }
    let (apex, comps) = sorted_apex(rows).expect("pairs of distinct labels are distinct");
    let lookup = comps.iter().enumerate().map(|(k, c)| ((c[0], c[1]), k)).collect();
    let p1 = FinFn::new(apex.clone(), a.clone(), comps.iter().map(|c| c[0]).collect())
        .expect("projection");
    let p2 = FinFn::new(apex.clone(), b.clone(), comps.iter().map(|c| c[1]).collect())
        .expect("projection");
    Product { apex, p1, p2, lookup }
}

impl Product {
    pub fn left(&self) -> &FinSetObj {
        self.p1.cod()
    }

    pub fn right(&self) -> &FinSetObj {
        self.p2.cod()
    }

    /// `<f, g>: Z → A × B`.
    pub fn pair(&self, f: &FinFn, g: &FinFn) -> Result<FinFn> {
        if f.dom() != g.dom() || f.cod() != self.left() || g.cod() != self.right() {
            return Err(FinSetError::ShapeMismatch(
                "pairing needs a common domain and the product's factors".into(),
            ));
        }
        let table = (0..f.dom().len())
            .map(|z| self.lookup[&(f.apply(z), g.apply(z))])
            .collect();
        FinFn::new(f.dom().clone(), self.apex.clone(), table)
    }

    /// The diagonal `A → A × A`; both factors must coincide.
    pub fn diagonal(&self) -> Result<FinFn> {
        if self.left() != self.right() {
            return Err(FinSetError::ShapeMismatch(
                "diagonal needs a square product".into(),
            ));
        }
        let id = FinFn::identity(self.left());
        self.pair(&id, &id)
    }
}

/// `f × g` between two products.
pub fn product_map(src: &Product, dst: &Product, f: &FinFn, g: &FinFn) -> Result<FinFn> {
    dst.pair(&src.p1.then(f)?, &src.p2.then(g)?)
}

/// `Δ: A → A × A`, landing in `product(a, a)`.
pub fn diagonal(a: &FinSetObj) -> FinFn {
    product(a, a).diagonal().expect("square product")
}

/// Pullback `{(x, y) | f(x) = g(y)}` of a cospan `f: X → A ← Y: g`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub apex: FinSetObj,
    /// Projection onto the domain of `f`.
    pub p1: FinFn,
    /// Projection onto the domain of `g`.
    pub p2: FinFn,
    f: FinFn,
    g: FinFn,
    lookup: HashMap<(usize, usize), usize>,
}

pub fn pullback(f: &FinFn, g: &FinFn) -> Result<Pullback> {
    if f.cod() != g.cod() {
        return Err(FinSetError::CodomainMismatch(format!(
            "pullback legs land in {:?} and {:?}",
            f.cod(),
            g.cod()
        )));
    }
    let mut by_value: HashMap<usize, Vec<usize>> = HashMap::new();
    for y in 0..g.dom().len() {
        by_value.entry(g.apply(y)).or_default().push(y);
    }
    let mut rows = Vec::new();
    for x in 0..f.dom().len() {
        if let Some(ys) = by_value.get(&f.apply(x)) {
            for &y in ys {
                rows.push((
                    Label::pair(f.dom().label(x).clone(), g.dom().label(y).clone()),
                    vec![x, y],
                ));
            }
        }
    }
    let (apex, comps) = sorted_apex(rows)?;
    let lookup = comps.iter().enumerate().map(|(k, c)| ((c[0], c[1]), k)).collect();
    let p1 = FinFn::new(apex.clone(), f.dom().clone(), comps.iter().map(|c| c[0]).collect())?;
    let p2 = FinFn::new(apex.clone(), g.dom().clone(), comps.iter().map(|c| c[1]).collect())?;
    Ok(Pullback {
        apex,
        p1,
        p2,
        f: f.clone(),
        g: g.clone(),
        lookup,
    })
}

impl Pullback {
    pub fn left_leg(&self) -> &FinFn {
        &self.f
    }

    pub fn right_leg(&self) -> &FinFn {
        &self.g
    }

    /// The unique `m: Z → apex` with `p1 ∘ m = a` and `p2 ∘ m = b`.
    pub fn mediate(&self, a: &FinFn, b: &FinFn) -> Result<FinFn> {
        if a.dom() != b.dom() || a.cod() != self.f.dom() || b.cod() != self.g.dom() {
            return Err(FinSetError::ShapeMismatch(
                "cone legs must share a domain and land in the pullback's feet".into(),
            ));
        }
        let mut table = Vec::with_capacity(a.dom().len());
        for z in 0..a.dom().len() {
            match self.lookup.get(&(a.apply(z), b.apply(z))) {
                Some(&k) => table.push(k),
                None => return Err(FinSetError::NotACone(a.dom().label(z).clone())),
            }
        }
        FinFn::new(a.dom().clone(), self.apex.clone(), table)
    }

    /// Position of the apex element `(x, y)`, if it exists.
    pub fn locate(&self, x: usize, y: usize) -> Option<usize> {
        self.lookup.get(&(x, y)).copied()
    }
}

/// The limit of `T --h--> A <--f-- X --g--> A <--h-- T`:
/// `{(t, x, t') | h(t) = f(x), g(x) = h(t')}`.
#[derive(Clone, Debug)]
pub struct ParallelPairPullback {
    pub apex: FinSetObj,
    pub to_t_left: FinFn,
    pub to_x: FinFn,
    pub to_t_right: FinFn,
}

pub fn parallel_pair_pullback(h: &FinFn, f: &FinFn, g: &FinFn) -> Result<ParallelPairPullback> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(FinSetError::ShapeMismatch(
            "the parallel pair must share domain and codomain".into(),
        ));
    }
    if h.cod() != f.cod() {
        return Err(FinSetError::ShapeMismatch(
            "the pulled-back map must land in the pair's codomain".into(),
        ));
    }
    let mut by_value: HashMap<usize, Vec<usize>> = HashMap::new();
    for t in 0..h.dom().len() {
        by_value.entry(h.apply(t)).or_default().push(t);
    }
    let none = Vec::new();
    let mut rows = Vec::new();
    for x in 0..f.dom().len() {
        let lefts = by_value.get(&f.apply(x)).unwrap_or(&none);
        let rights = by_value.get(&g.apply(x)).unwrap_or(&none);
        for &t in lefts {
            for &t2 in rights {
                rows.push((
                    Label::triple(
                        h.dom().label(t).clone(),
                        f.dom().label(x).clone(),
                        h.dom().label(t2).clone(),
                    ),
                    vec![t, x, t2],
                ));
            }
        }
    }
    let (apex, comps) = sorted_apex(rows)?;
    let column = |k: usize, cod: &FinSetObj| {
        FinFn::new(apex.clone(), cod.clone(), comps.iter().map(|c| c[k]).collect())
    };
    Ok(ParallelPairPullback {
        to_t_left: column(0, h.dom())?,
        to_x: column(1, f.dom())?,
        to_t_right: column(2, h.dom())?,
        apex,
    })
}

/// Equalizer of a parallel pair, as a subset of the domain with its
/// inclusion. Elements keep their labels.
pub fn equalizer(f: &FinFn, g: &FinFn) -> Result<(FinSetObj, FinFn)> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(FinSetError::CodomainMismatch(
            "equalizer needs a parallel pair".into(),
        ));
    }
    let keep: Vec<usize> = (0..f.dom().len())
        .filter(|&x| f.apply(x) == g.apply(x))
        .collect();
    let sub = FinSetObj::new(keep.iter().map(|&x| f.dom().label(x).clone()).collect())?;
    let incl = FinFn::new(sub.clone(), f.dom().clone(), keep)?;
    Ok((sub, incl))
}

/// Monicity in finite sets is injectivity.
pub fn is_mono(f: &FinFn) -> bool {
    f.is_injective()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize) -> FinSetObj {
        FinSetObj::range(n)
    }

    fn func(dom: usize, cod: usize, table: &[usize]) -> FinFn {
        FinFn::new(set(dom), set(cod), table.to_vec()).unwrap()
    }

    fn pair_labels(s: &FinSetObj) -> Vec<(i64, i64)> {
        s.elements()
            .iter()
            .map(|l| match l.components().unwrap() {
                [Label::Int(a), Label::Int(b)] => (*a, *b),
                _ => panic!("not an int pair"),
            })
            .collect()
    }

    #[test]
    fn pullback_of_identity_is_diagonal() {
        let id = FinFn::identity(&set(2));
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pair_labels(&pb.apex), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn pullback_over_terminal_is_product() {
        let f = FinFn::to_terminal(&set(2));
        let g = FinFn::to_terminal(&set(1));
        let pb = pullback(&f, &g).unwrap();
        assert_eq!(pb.apex.len(), 2);
    }

    #[test]
    fn pullback_against_swap() {
        let id = FinFn::identity(&set(2));
        let swap = func(2, 2, &[1, 0]);
        let pb = pullback(&id, &swap).unwrap();
        // enumerated by hand: f(x) = g(y) iff x = 1 - y
        assert_eq!(pair_labels(&pb.apex), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn pullback_rejects_mismatched_codomains() {
        let f = FinFn::identity(&set(2));
        let g = FinFn::identity(&set(3));
        assert!(matches!(
            pullback(&f, &g),
            Err(FinSetError::CodomainMismatch(_))
        ));
    }

    #[test]
    fn parallel_pair_identities_on_singleton() {
        let id = FinFn::identity(&set(1));
        let pp = parallel_pair_pullback(&id, &id, &id).unwrap();
        assert_eq!(pp.apex.len(), 1);
    }

    #[test]
    fn parallel_pair_with_constant_h() {
        // h: {0} → A picks a0 = 0; f, g: X → A.
        let h = func(1, 3, &[0]);
        let f = func(4, 3, &[0, 0, 1, 0]);
        let g = func(4, 3, &[0, 2, 0, 0]);
        let pp = parallel_pair_pullback(&h, &f, &g).unwrap();
        let xs: Vec<usize> = pp.to_x.table().to_vec();
        // x with f(x) = g(x) = 0
        assert_eq!(xs, vec![0, 3]);
    }

    #[test]
    fn parallel_pair_shape_errors() {
        let h = func(1, 2, &[0]);
        let f = func(2, 2, &[0, 1]);
        let g = func(3, 2, &[0, 1, 1]);
        assert!(matches!(
            parallel_pair_pullback(&h, &f, &g),
            Err(FinSetError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn product_and_diagonal() {
        let p = product(&set(2), &set(1));
        assert_eq!(p.apex.len(), 2);
        let d = diagonal(&set(2));
        assert_eq!(
            d.pairs(),
            vec![
                (Label::Int(0), Label::pair(Label::Int(0), Label::Int(0))),
                (Label::Int(1), Label::pair(Label::Int(1), Label::Int(1))),
            ]
        );
    }

    #[test]
    fn equalizer_of_identity_is_whole_domain() {
        let id = FinFn::identity(&set(3));
        let (e, incl) = equalizer(&id, &id).unwrap();
        assert_eq!(e, set(3));
        assert!(incl.is_bijective());
    }

    #[test]
    fn equalizer_rejects_non_parallel() {
        let f = func(2, 2, &[0, 1]);
        let g = func(2, 3, &[0, 1]);
        assert!(equalizer(&f, &g).is_err());
    }

    #[test]
    fn monicity() {
        assert!(is_mono(&FinFn::identity(&set(3))));
        assert!(!is_mono(&func(2, 1, &[0, 0])));
    }

    #[test]
    fn mediate_rejects_non_cone() {
        let id = FinFn::identity(&set(2));
        let swap = func(2, 2, &[1, 0]);
        let pb = pullback(&id, &id).unwrap();
        assert!(matches!(
            pb.mediate(&id, &swap),
            Err(FinSetError::NotACone(_))
        ));
    }

    #[test]
    fn function_enumeration_counts() {
        assert_eq!(all_functions(&set(2), &set(3)).len(), 9);
        assert_eq!(all_functions(&set(0), &set(0)).len(), 1);
        assert_eq!(all_functions(&set(1), &set(0)).len(), 0);
    }

    #[test]
    fn from_pairs_requires_totality() {
        let r = FinFn::from_pairs(set(2), set(2), vec![(Label::Int(0), Label::Int(1))]);
        assert!(matches!(r, Err(FinSetError::NotTotal { .. })));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FinSetObj::new(vec![Label::Int(1), Label::Int(1)]).is_err());
    }
}
