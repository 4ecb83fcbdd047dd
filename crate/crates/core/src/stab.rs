//! Stable envelopes in tautological presentation.
//!
//! [`stab_psi`] implements the inductive shuffle formula: slots are put in
//! chamber order, split into a prefix and a remainder, both halves are
//! computed recursively and glued with the kernel `e(N[−1])`:
//!
//! ```text
//! Stab(F) = Shuffle( e(T*Rep[−1]) Stab(F1) Stab(F2) / (e(𝔤[−1]) e(h𝔤[−1])) )
//! ```
//!
//! A single slot returns its leaf class unchanged. Results live in the
//! localized ring: for `v ≥ 2` a denominator built from `s − s'` and
//! `s − s' ± h` can survive, and it is harmless at every torus fixed point.

use std::collections::HashMap;
use std::fmt;

use crate::coha::{check_universe, chern_block, shift_symbol, CohaElement};
use crate::error::{Error, Result};
use crate::quiver::{
    class_gauge, class_trep, euler, euler_poly, grade_part, normal_split, DimVec, GradeSplit, Quiver,
};
use crate::symalg::{permutations, shuffle_sum, subsets, Poly, RatFun, ShuffleSplit, Symbol};

/// Ordered slots `(v_j, w_j)` with `Σ v_j = v` and `Σ w_j = w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    slots: Vec<(DimVec, DimVec)>,
}

impl Decomposition {
    pub fn new(slots: Vec<(DimVec, DimVec)>) -> Result<Decomposition> {
        let Some((v0, _)) = slots.first() else {
            return Err(Error::Invalid("a decomposition needs at least one slot".into()));
        };
        let n = v0.len();
        if slots.iter().any(|(v, w)| v.len() != n || w.len() != n) {
            return Err(Error::Dimension("slots of different lengths".into()));
        }
        Ok(Decomposition { slots })
    }

    /// One-vertex decomposition with `w_j = 1` in every slot.
    pub fn unit_framings(components: &[usize]) -> Result<Decomposition> {
        Decomposition::new(
            components
                .iter()
                .map(|&v| (DimVec(vec![v]), DimVec(vec![1])))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[(DimVec, DimVec)] {
        &self.slots
    }

    pub fn num_vertices(&self) -> usize {
        self.slots[0].0.len()
    }

    pub fn v(&self) -> DimVec {
        self.slots
            .iter()
            .fold(DimVec::zero(self.num_vertices()), |acc, (v, _)| &acc + v)
    }

    pub fn w(&self) -> DimVec {
        self.slots
            .iter()
            .fold(DimVec::zero(self.num_vertices()), |acc, (_, w)| &acc + w)
    }

    /// `framing_offsets()[j][i]` = number of `a(i+1, ·)` in slots before `j`.
    pub fn framing_offsets(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut acc = vec![0; n];
        self.slots
            .iter()
            .map(|(_, w)| {
                let here = acc.clone();
                for i in 0..n {
                    acc[i] += w[i];
                }
                here
            })
            .collect()
    }

    /// Slot that owns the framing symbol `a(i, k)` in the natural labeling.
    pub fn slot_of_framing(&self, s: &Symbol) -> Option<usize> {
        let i = s.vertex() - 1;
        let offsets = self.framing_offsets();
        (0..self.len()).find(|&j| {
            let lo = offsets[j][i];
            s.index() > lo && s.index() <= lo + self.slots[j].1[i]
        })
    }
}

/// The chamber `a_{σ(1)} < a_{σ(2)} < … < a_{σ(k)}`, stored 0-based:
/// `order[p]` is the slot in position `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chamber {
    order: Vec<usize>,
}

impl Chamber {
    pub fn identity(k: usize) -> Chamber {
        Chamber {
            order: (0..k).collect(),
        }
    }

    /// From a 1-based permutation word such as `[2, 1, 3]`.
    pub fn from_word(word: &[usize]) -> Result<Chamber> {
        let k = word.len();
        let mut seen = vec![false; k];
        for &x in word {
            if x == 0 || x > k || seen[x - 1] {
                return Err(Error::Invalid(format!(
                    "chamber word {word:?} is not a permutation of 1..={k}"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Chamber {
            order: word.iter().map(|x| x - 1).collect(),
        })
    }

    /// All `k!` chambers in lexicographic order of their words.
    pub fn all(k: usize) -> Vec<Chamber> {
        permutations(k)
            .into_iter()
            .map(|(order, _)| Chamber { order })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn word(&self) -> Vec<usize> {
        self.order.iter().map(|x| x + 1).collect()
    }

    /// Position (0-based) of a slot; the cocharacter exponent of `a_slot` is `position + 1`.
    pub fn position(&self, slot: usize) -> usize {
        self.order.iter().position(|&x| x == slot).expect("slot in chamber")
    }

    /// Exchanges the slots at positions `p` and `p + 1`.
    pub fn swap_adjacent(&self, p: usize) -> Chamber {
        let mut order = self.order.clone();
        order.swap(p, p + 1);
        Chamber { order }
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str("<")?;
            }
            write!(f, "a{}", s + 1)?;
        }
        Ok(())
    }
}

/// A fixed component `Π naka(v_j, w_j)` with one tautological class per slot.
///
/// Leaf class `j` lives in the slot-local labeling `a(i, 1..=w_j)`, `s(i, 1..=v_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedComponent {
    pub decomposition: Decomposition,
    pub leaf_classes: Vec<RatFun>,
}

pub(crate) fn check_class(f: &RatFun, v: &DimVec, w: &DimVec) -> Result<()> {
    check_universe(f.numerator(), v, w)?;
    for (p, _) in f.denominator_factors() {
        check_universe(p, v, w)?;
    }
    for i in 0..v.len() {
        let block = chern_block(i + 1, v[i]);
        for pair in block.windows(2) {
            let (x, y) = (pair[0], pair[1]);
            let swapped = f.rename(move |s| {
                if s == x {
                    y
                } else if s == y {
                    x
                } else {
                    s
                }
            });
            if !swapped.equals(f) {
                return Err(Error::NotSymmetric(format!("{f} under {x} <-> {y}")));
            }
        }
    }
    Ok(())
}

impl FixedComponent {
    pub fn new(decomposition: Decomposition, leaf_classes: Vec<RatFun>) -> Result<FixedComponent> {
        if leaf_classes.len() != decomposition.len() {
            return Err(Error::Invalid(format!(
                "{} leaf classes for {} slots",
                leaf_classes.len(),
                decomposition.len()
            )));
        }
        for ((v, w), leaf) in decomposition.slots().iter().zip(&leaf_classes) {
            check_class(leaf, v, w)?;
        }
        Ok(FixedComponent {
            decomposition,
            leaf_classes,
        })
    }

    /// All leaf classes equal to 1.
    pub fn with_unit_leaves(decomposition: Decomposition) -> FixedComponent {
        let k = decomposition.len();
        FixedComponent {
            decomposition,
            leaf_classes: vec![RatFun::one(); k],
        }
    }
}

/// A class on `naka(v, w)` in tautological presentation, possibly with a
/// denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct NakaClass {
    pub quiver: Quiver,
    pub v: DimVec,
    pub w: DimVec,
    pub class: RatFun,
}

impl NakaClass {
    pub fn new(quiver: &Quiver, v: DimVec, w: DimVec, class: RatFun) -> Result<NakaClass> {
        quiver.check_dims(&v)?;
        quiver.check_dims(&w)?;
        check_class(&class, &v, &w)?;
        Ok(NakaClass {
            quiver: quiver.clone(),
            v,
            w,
            class,
        })
    }

    pub fn unit(quiver: &Quiver) -> NakaClass {
        CohaElement::unit(quiver).into()
    }

    /// The class as a symmetric polynomial, when it has no denominator.
    pub fn to_coha(&self) -> Option<CohaElement> {
        Some(CohaElement {
            quiver: self.quiver.clone(),
            v: self.v.clone(),
            w: self.w.clone(),
            poly: self.class.as_poly()?.clone(),
        })
    }
}

impl From<CohaElement> for NakaClass {
    fn from(g: CohaElement) -> NakaClass {
        NakaClass {
            quiver: g.quiver,
            v: g.v,
            w: g.w,
            class: g.poly.into(),
        }
    }
}

/// Hypertoric stable envelope for `{a < 0}`: `e(T*Rep(v, w)[−1]) · p`.
pub fn stab_hypertoric(q: &Quiver, p: &Poly, split: &GradeSplit) -> Result<Poly> {
    let crossing = grade_part(&class_trep(q, &split.v(), &split.w())?, split, -1)?;
    Ok(euler_poly(&crossing)? * p)
}

struct Slot<'a> {
    v: &'a DimVec,
    w: &'a DimVec,
    leaf: &'a RatFun,
}

fn stab_ordered(
    q: &Quiver,
    slots: &[Slot<'_>],
    split_at: &(dyn Fn(usize) -> usize + Sync),
) -> Result<RatFun> {
    if slots.len() == 1 {
        return Ok(slots[0].leaf.clone());
    }
    let p = split_at(slots.len());
    assert!(p >= 1 && p < slots.len(), "split position out of range");
    let n = q.num_vertices();
    let sum = |part: &[Slot<'_>]| {
        part.iter().fold((DimVec::zero(n), DimVec::zero(n)), |(v, w), s| {
            (&v + s.v, &w + s.w)
        })
    };
    let (head, tail) = slots.split_at(p);
    let (v1, w1) = sum(head);
    let (v2, w2) = sum(tail);
    let (first, second) = rayon::join(
        || stab_ordered(q, head, split_at),
        || stab_ordered(q, tail, split_at),
    );
    let second = second?.rename(|s| shift_symbol(s, &v1, &w1));
    let split = GradeSplit::new(v1.clone(), v2.clone(), w1, w2);
    let kernel = normal_split(q, &split)?.n_minus;
    let integrand = euler(&kernel)?.mul(&first?).mul(&second);
    shuffle_sum(&integrand, &ShuffleSplit::new(v1.0, v2.0))
}

/// `Stab^ψ` with the canonical split (prefix of length 1) at every level.
pub fn stab_psi(q: &Quiver, component: &FixedComponent, chamber: &Chamber) -> Result<RatFun> {
    stab_psi_split(q, component, chamber, &|_| 1)
}

fn ordered_slots<'a>(q: &Quiver, component: &'a FixedComponent, chamber: &Chamber) -> Result<Vec<Slot<'a>>> {
    let dec = &component.decomposition;
    if chamber.len() != dec.len() {
        return Err(Error::Invalid(format!(
            "chamber on {} slots for a decomposition with {}",
            chamber.len(),
            dec.len()
        )));
    }
    if dec.num_vertices() != q.num_vertices() {
        return Err(Error::Dimension("decomposition does not match the quiver".into()));
    }
    Ok(chamber
        .order()
        .iter()
        .map(|&j| Slot {
            v: &dec.slots()[j].0,
            w: &dec.slots()[j].1,
            leaf: &component.leaf_classes[j],
        })
        .collect())
}

/// Translation of framing symbols between the natural layout (slots in
/// their own order) and the chamber-ordered layout used internally.
struct Layout {
    /// Per slot `j`, per vertex: first index of slot `j` in each layout.
    natural: Vec<Vec<usize>>,
    ordered: Vec<Vec<usize>>,
    widths: Vec<DimVec>,
}

impl Layout {
    fn new(dec: &Decomposition, chamber: &Chamber) -> Layout {
        let n = dec.num_vertices();
        let mut ordered = vec![vec![0; n]; dec.len()];
        let mut acc = vec![0; n];
        for &j in chamber.order() {
            ordered[j] = acc.clone();
            for i in 0..n {
                acc[i] += dec.slots()[j].1[i];
            }
        }
        Layout {
            natural: dec.framing_offsets(),
            ordered,
            widths: dec.slots().iter().map(|(_, w)| w.clone()).collect(),
        }
    }

    fn translate(&self, s: Symbol, from: &[Vec<usize>], to: &[Vec<usize>]) -> Symbol {
        if !s.is_framing() {
            return s;
        }
        let i = s.vertex() - 1;
        for (j, w) in self.widths.iter().enumerate() {
            let lo = from[j][i];
            if s.index() > lo && s.index() <= lo + w[i] {
                return s.with_index(s.index() - lo + to[j][i]);
            }
        }
        s
    }

    fn to_natural(&self, s: Symbol) -> Symbol {
        self.translate(s, &self.ordered, &self.natural)
    }

    fn to_ordered(&self, s: Symbol) -> Symbol {
        self.translate(s, &self.natural, &self.ordered)
    }
}

/// `Stab^ψ` where a list of `k` chamber-ordered slots is split after
/// position `split_at(k)` (which must lie in `1..k`).
pub fn stab_psi_split(
    q: &Quiver,
    component: &FixedComponent,
    chamber: &Chamber,
    split_at: &(dyn Fn(usize) -> usize + Sync),
) -> Result<RatFun> {
    let slots = ordered_slots(q, component, chamber)?;
    let ordered = stab_ordered(q, &slots, split_at)?;
    let layout = Layout::new(&component.decomposition, chamber);
    Ok(ordered.rename(|s| layout.to_natural(s)))
}

type Memo = HashMap<(usize, usize, Vec<Vec<Poly>>), RatFun>;

/// Evaluates the recursion on a sub-list of slots at given Chern root
/// values; `offset` is the framing offset of the sub-list in the ordered layout.
struct EvalCtx<'a> {
    q: &'a Quiver,
    slots: &'a [Slot<'a>],
}

impl EvalCtx<'_> {
    fn eval(&self, start: usize, len: usize, offset: &[usize], values: &[Vec<Poly>], memo: &mut Memo) -> Result<RatFun> {
        let mut key_values: Vec<Vec<Poly>> = values.to_vec();
        for vs in &mut key_values {
            vs.sort();
        }
        let key = (start, len, key_values);
        if let Some(hit) = memo.get(&key) {
            return Ok(hit.clone());
        }
        let local_a = |s: Symbol| {
            if s.is_framing() {
                s.with_index(s.index() + offset[s.vertex() - 1])
            } else {
                s
            }
        };
        let assignment = |vals: &[Vec<Poly>]| -> HashMap<Symbol, Poly> {
            let mut m = HashMap::new();
            for (i, vs) in vals.iter().enumerate() {
                for (alpha, x) in vs.iter().enumerate() {
                    m.insert(Symbol::s(i + 1, alpha + 1), x.clone());
                }
            }
            m
        };
        let part = &self.slots[start..start + len];
        let out = if len == 1 {
            part[0].leaf.rename(local_a).substitute(&assignment(values))?
        } else {
            let p = 1;
            let n = self.q.num_vertices();
            let sum = |xs: &[Slot<'_>]| {
                xs.iter().fold((DimVec::zero(n), DimVec::zero(n)), |(v, w), s| (&v + s.v, &w + s.w))
            };
            let (v1, w1) = sum(&part[..p]);
            let (v2, w2) = sum(&part[p..]);
            let split = GradeSplit::new(v1.clone(), v2.clone(), w1.clone(), w2);
            let kernel = euler(&normal_split(self.q, &split)?.n_minus)?.rename(local_a);
            let offset2: Vec<usize> = offset.iter().zip(&w1.0).map(|(o, w)| o + w).collect();
            let per_vertex: Vec<Vec<Vec<usize>>> = (0..n)
                .map(|i| subsets(v1[i] + v2[i], v1[i]))
                .collect();
            let mut total = RatFun::zero();
            for choice in cartesian(&per_vertex) {
                let mut first = Vec::with_capacity(n);
                let mut second = Vec::with_capacity(n);
                let mut arranged = Vec::with_capacity(n);
                for i in 0..n {
                    let chosen = &choice[i];
                    let f: Vec<Poly> = chosen.iter().map(|&x| values[i][x].clone()).collect();
                    let g: Vec<Poly> = (0..values[i].len())
                        .filter(|x| !chosen.contains(x))
                        .map(|x| values[i][x].clone())
                        .collect();
                    arranged.push(f.iter().chain(&g).cloned().collect::<Vec<_>>());
                    first.push(f);
                    second.push(g);
                }
                let k = kernel.substitute(&assignment(&arranged))?;
                if k.is_zero() {
                    continue;
                }
                let s1 = self.eval(start, p, offset, &first, memo)?;
                if s1.is_zero() {
                    continue;
                }
                let s2 = self.eval(start + p, len - p, &offset2, &second, memo)?;
                total = total.add(&k.mul(&s1).mul(&s2));
            }
            total
        };
        memo.insert(key, out.clone());
        Ok(out)
    }
}

fn cartesian(per_vertex: &[Vec<Vec<usize>>]) -> Vec<Vec<Vec<usize>>> {
    per_vertex.iter().fold(vec![Vec::new()], |acc, choices| {
        acc.into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect()
    })
}

/// Restriction of `stab_psi(component, chamber)` to the point
/// `s(i, α) ↦ point[(i, α)]`, computed by running the recursion on values.
///
/// Agrees with substituting into [`stab_psi`]; it never forms the symbolic
/// class, which for large `v` carries big denominators. Falls back to the
/// symbolic route when some shuffle term is singular at the point.
pub fn stab_psi_at(
    q: &Quiver,
    component: &FixedComponent,
    chamber: &Chamber,
    point: &HashMap<Symbol, Poly>,
) -> Result<RatFun> {
    let slots = ordered_slots(q, component, chamber)?;
    let layout = Layout::new(&component.decomposition, chamber);
    let v = component.decomposition.v();
    let mut values = Vec::with_capacity(v.len());
    for i in 0..v.len() {
        let mut vs = Vec::with_capacity(v[i]);
        for alpha in 1..=v[i] {
            let x = point.get(&Symbol::s(i + 1, alpha)).ok_or_else(|| {
                Error::Invalid(format!("point does not assign {}", Symbol::s(i + 1, alpha)))
            })?;
            vs.push(x.rename(|s| layout.to_ordered(s)));
        }
        values.push(vs);
    }
    let ctx = EvalCtx { q, slots: &slots };
    let zero = vec![0; v.len()];
    match ctx.eval(0, slots.len(), &zero, &values, &mut Memo::new()) {
        Ok(r) => Ok(r.rename(|s| layout.to_natural(s))),
        Err(Error::DenominatorVanishes(_)) => stab_psi(q, component, chamber)?.substitute(point),
        Err(e) => Err(e),
    }
}

/// Product on tautological classes of Nakajima varieties via `Stab_{a1<a2}`.
pub fn stab_product(g1: &NakaClass, g2: &NakaClass) -> Result<NakaClass> {
    if g1.quiver != g2.quiver {
        return Err(Error::Invalid("factors live on different quivers".into()));
    }
    let dec = Decomposition::new(vec![(g1.v.clone(), g1.w.clone()), (g2.v.clone(), g2.w.clone())])?;
    let v = dec.v();
    let w = dec.w();
    let component = FixedComponent::new(dec, vec![g1.class.clone(), g2.class.clone()])?;
    let class = stab_psi(&g1.quiver, &component, &Chamber::identity(2))?;
    Ok(NakaClass {
        quiver: g1.quiver.clone(),
        v,
        w,
        class,
    })
}

/// Tautological shadow of `ψ`: multiplication by `e(h𝔤_v)`.
pub fn psi(g: &CohaElement) -> Result<CohaElement> {
    let factor = euler_poly(&class_gauge(&g.quiver, &g.v, 1)?)?;
    Ok(CohaElement {
        poly: factor * &g.poly,
        ..g.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::{parse_poly, parse_ratfun};

    fn rf(text: &str) -> RatFun {
        parse_ratfun(text).unwrap()
    }

    fn dv(x: &[usize]) -> DimVec {
        DimVec(x.to_vec())
    }

    fn unit_component(components: &[usize]) -> FixedComponent {
        FixedComponent::with_unit_leaves(Decomposition::unit_framings(components).unwrap())
    }

    #[test]
    fn hypertoric_examples() {
        let q = Quiver::a1();
        let split = GradeSplit::new(dv(&[1]), dv(&[0]), dv(&[1]), dv(&[1]));
        assert_eq!(
            stab_hypertoric(&q, &Poly::one(), &split).unwrap(),
            parse_poly("s(1,1) - a(1,2) + h").unwrap()
        );
        let split = GradeSplit::new(dv(&[0]), dv(&[1]), dv(&[1]), dv(&[1]));
        assert_eq!(
            stab_hypertoric(&q, &Poly::one(), &split).unwrap(),
            parse_poly("a(1,1) - s(1,1)").unwrap()
        );
        let split = GradeSplit::new(dv(&[1]), dv(&[0]), dv(&[2]), dv(&[0]));
        let p = parse_poly("s(1,1)*a(1,2)").unwrap();
        assert_eq!(stab_hypertoric(&q, &p, &split).unwrap(), p);
    }

    #[test]
    fn tp1_envelopes() {
        let q = Quiver::a1();
        let id = Chamber::identity(2);
        assert_eq!(
            stab_psi(&q, &unit_component(&[1, 0]), &id).unwrap(),
            rf("s(1,1) - a(1,2) + h")
        );
        assert_eq!(
            stab_psi(&q, &unit_component(&[0, 1]), &id).unwrap(),
            rf("a(1,1) - s(1,1)")
        );
        let rev = Chamber::from_word(&[2, 1]).unwrap();
        assert_eq!(
            stab_psi(&q, &unit_component(&[1, 0]), &rev).unwrap(),
            rf("a(1,2) - s(1,1)")
        );
        assert_eq!(
            stab_psi(&q, &unit_component(&[0, 1]), &rev).unwrap(),
            rf("s(1,1) - a(1,1) + h")
        );
    }

    #[test]
    fn single_slot_returns_leaf() {
        let q = Quiver::a1();
        let dec = Decomposition::new(vec![(dv(&[1]), dv(&[2]))]).unwrap();
        let leaf = rf("s(1,1)*a(1,2)");
        let f = FixedComponent::new(dec, vec![leaf.clone()]).unwrap();
        assert_eq!(stab_psi(&q, &f, &Chamber::identity(1)).unwrap(), leaf);
    }

    #[test]
    fn chamber_words() {
        assert!(Chamber::from_word(&[1, 1]).is_err());
        assert!(Chamber::from_word(&[0, 1]).is_err());
        let c = Chamber::from_word(&[3, 1, 2]).unwrap();
        assert_eq!(c.position(0), 1);
        assert_eq!(c.word(), vec![3, 1, 2]);
        assert_eq!(c.to_string(), "a3<a1<a2");
        assert_eq!(Chamber::all(3).len(), 6);
    }

    #[test]
    fn psi_examples() {
        let q = Quiver::a1();
        let g = CohaElement::new(&q, dv(&[1]), dv(&[2]), Poly::one()).unwrap();
        assert_eq!(psi(&g).unwrap().poly, Poly::h());
        let g0 = CohaElement::new(&q, dv(&[0]), dv(&[2]), parse_poly("a(1,1)").unwrap()).unwrap();
        assert_eq!(psi(&g0).unwrap(), g0);
        let g2 = CohaElement::new(&q, dv(&[2]), dv(&[0]), Poly::one()).unwrap();
        assert_eq!(
            psi(&g2).unwrap().poly,
            parse_poly("h^2*(h^2 - (s(1,1)-s(1,2))^2)").unwrap()
        );
    }

    #[test]
    fn product_examples() {
        let q = Quiver::a1();
        let g1 = NakaClass::new(&q, dv(&[1]), dv(&[1]), RatFun::one()).unwrap();
        let g2 = NakaClass::new(&q, dv(&[0]), dv(&[1]), RatFun::one()).unwrap();
        assert_eq!(stab_product(&g1, &g2).unwrap().class, rf("s(1,1) - a(1,2) + h"));
        let unit = NakaClass::unit(&q);
        assert_eq!(stab_product(&g1, &unit).unwrap(), g1);
        assert_eq!(stab_product(&unit, &g1).unwrap(), g1);
        let left = stab_product(&stab_product(&g1, &g2).unwrap(), &g1).unwrap();
        let right = stab_product(&g1, &stab_product(&g2, &g1).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn grassmannian_envelope_is_regular_at_fixed_points() {
        // T*Gr(2,3): the class keeps a denominator that does not vanish at s = (a_i, a_j).
        let q = Quiver::a1();
        let st = stab_psi(&q, &unit_component(&[1, 1, 0]), &Chamber::identity(3)).unwrap();
        assert!(!st.is_polynomial());
        let at = |i: usize, j: usize| {
            let m = [(Symbol::s(1, 1), Poly::var(Symbol::a(1, i))), (Symbol::s(1, 2), Poly::var(Symbol::a(1, j)))]
                .into_iter()
                .collect();
            st.substitute(&m).unwrap()
        };
        // diagonal: e(N⁻) at the point (a1, a2)
        assert_eq!(at(1, 2), rf("(a(1,1)-a(1,3)+h)*(a(1,2)-a(1,3)+h)"));
        assert_eq!(at(2, 1), at(1, 2));
        // the point (a2, a3) lies below in the chamber order
        assert!(at(2, 3).is_polynomial());
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let q = Quiver::a1();
        assert!(stab_psi(&q, &unit_component(&[1, 0]), &Chamber::identity(3)).is_err());
        let dec = Decomposition::unit_framings(&[1, 0]).unwrap();
        assert!(FixedComponent::new(dec, vec![RatFun::one()]).is_err());
        assert!(Decomposition::new(vec![]).is_err());
    }
}
