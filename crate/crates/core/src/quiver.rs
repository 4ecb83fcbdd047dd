//! Quivers, dimension vectors and equivariant K-classes of framed
//! representation spaces.
//!
//! Weights are additive: a weight is an integer linear form in the symbols
//! `a(i,k)`, `s(i,α)` and `h`. A map `X → Y` between spaces with weights
//! `x` and `y` has weight `y − x`; cotangent-dual directions carry `+h`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Index};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::symalg::{Poly, RatFun, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    /// `(tail, head)` as 0-based vertex positions.
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverFile {
    vertices: Vec<Value>,
    arrows: Vec<[Value; 2]>,
}

fn vertex_label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Invalid(format!("vertex id must be a string or number, got {other}"))),
    }
}

impl Quiver {
    /// Vertices are named `1..=n`.
    pub fn new(num_vertices: usize, arrows: &[(usize, usize)]) -> Quiver {
        assert!(
            arrows.iter().all(|&(t, h)| t < num_vertices && h < num_vertices),
            "arrow endpoint out of range"
        );
        Quiver {
            vertices: (1..=num_vertices).map(|i| i.to_string()).collect(),
            arrows: arrows.to_vec(),
        }
    }

    /// One vertex, no arrows; `naka(v, w) = T*Gr(v, w)`.
    pub fn a1() -> Quiver {
        Quiver::new(1, &[])
    }

    /// One vertex with a loop.
    pub fn jordan() -> Quiver {
        Quiver::new(1, &[(0, 0)])
    }

    /// Two vertices, one arrow `1 → 2`.
    pub fn a2() -> Quiver {
        Quiver::new(2, &[(0, 1)])
    }

    pub fn from_json(text: &str) -> Result<Quiver> {
        let file: QuiverFile = serde_json::from_str(text)?;
        let vertices = file
            .vertices
            .iter()
            .map(vertex_label)
            .collect::<Result<Vec<_>>>()?;
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate vertex {v}")));
            }
        }
        let pos = |v: &Value| -> Result<usize> {
            let label = vertex_label(v)?;
            vertices
                .iter()
                .position(|x| *x == label)
                .ok_or_else(|| Error::Invalid(format!("arrow mentions unknown vertex {label}")))
        };
        let arrows = file
            .arrows
            .iter()
            .map(|[t, h]| Ok((pos(t)?, pos(h)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Quiver { vertices, arrows })
    }

    pub fn to_json(&self) -> String {
        let file = QuiverFile {
            vertices: self.vertices.iter().cloned().map(Value::String).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|&(t, h)| {
                    [
                        Value::String(self.vertices[t].clone()),
                        Value::String(self.vertices[h].clone()),
                    ]
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("quiver serializes")
    }

    /// Stable content hash (hex SHA-256 of the canonical JSON with sorted arrows).
    pub fn hash(&self) -> String {
        let mut arrows = self.arrows.clone();
        arrows.sort();
        let canonical = Quiver {
            vertices: self.vertices.clone(),
            arrows,
        };
        hex::encode(Sha256::digest(canonical.to_json().as_bytes()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Adjacency matrix `Q[t][h]` = number of arrows `t → h`.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut m = vec![vec![0; n]; n];
        for &(t, h) in &self.arrows {
            m[t][h] += 1;
        }
        m
    }

    pub fn check_dims(&self, d: &DimVec) -> Result<()> {
        if d.len() != self.num_vertices() {
            return Err(Error::Dimension(format!(
                "dimension vector {d} has {} entries, quiver has {} vertices",
                d.len(),
                self.num_vertices()
            )));
        }
        Ok(())
    }
}

/// Nonnegative integer vector indexed by vertex position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVec(pub Vec<usize>);

impl DimVec {
    pub fn zero(n: usize) -> DimVec {
        DimVec(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for DimVec {
    fn from(v: Vec<usize>) -> DimVec {
        DimVec(v)
    }
}

impl Index<usize> for DimVec {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl Add for &DimVec {
    type Output = DimVec;
    fn add(self, rhs: &DimVec) -> DimVec {
        assert_eq!(self.len(), rhs.len(), "dimension vectors of different length");
        DimVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Integer linear form in the symbols; no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(BTreeMap<Symbol, i64>);

impl Weight {
    pub fn zero() -> Weight {
        Weight::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Symbol, i64)>>(terms: I) -> Weight {
        let mut w = Weight::zero();
        for (s, c) in terms {
            w.add_term(s, c);
        }
        w
    }

    fn add_term(&mut self, s: Symbol, c: i64) {
        let e = self.0.entry(s).or_default();
        *e += c;
        if *e == 0 {
            self.0.remove(&s);
        }
    }

    /// `target − source + shift·h`.
    pub fn hom(target: Symbol, source: Symbol, shift: i64) -> Weight {
        Weight::from_terms([(target, 1), (source, -1), (Symbol::H, shift)])
    }

    pub fn h(shift: i64) -> Weight {
        Weight::from_terms([(Symbol::H, shift)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, s: &Symbol) -> i64 {
        self.0.get(s).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Symbol, i64)> + '_ {
        self.0.iter().map(|(&s, &c)| (s, c))
    }

    pub fn h_coeff(&self) -> i64 {
        self.coeff(&Symbol::H)
    }

    /// True when only `h` appears.
    pub fn is_pure_h(&self) -> bool {
        self.0.keys().all(Symbol::is_hbar)
    }

    pub fn to_poly(&self) -> Poly {
        let coeffs: Vec<(Symbol, i64)> = self.terms().collect();
        Poly::linear(&coeffs, 0)
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|(&s, &c)| (s, -c)).collect())
    }

    /// Substitutes symbols by linear forms.
    pub fn substitute(&self, assignment: &HashMap<Symbol, Weight>) -> Weight {
        let mut out = Weight::zero();
        for (s, c) in self.terms() {
            match assignment.get(&s) {
                Some(w) => {
                    for (t, d) in w.terms() {
                        out.add_term(t, c * d);
                    }
                }
                None => out.add_term(s, c),
            }
        }
        out
    }

    /// Parses a linear form such as `a(1,2) - s(1,1) + 2*h`.
    pub fn parse(text: &str) -> Result<Weight> {
        let p = crate::symalg::parse_poly(text)?;
        let mut w = Weight::zero();
        for (m, c) in p.terms() {
            let bad = || Error::Invalid(format!("not an integer linear form: {text}"));
            if !c.is_integer() || m.degree() != 1 {
                return Err(bad());
            }
            let c: i64 = c.to_integer().try_into().map_err(|_| bad())?;
            w.add_term(m.factors()[0].0, c);
        }
        Ok(w)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Virtual equivariant K-class: a finite signed multiset of weights.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KClass(BTreeMap<Weight, i64>);

impl KClass {
    pub fn empty() -> KClass {
        KClass::default()
    }

    pub fn insert(&mut self, w: Weight, mult: i64) {
        let e = self.0.entry(w.clone()).or_default();
        *e += mult;
        if *e == 0 {
            self.0.remove(&w);
        }
    }

    pub fn from_weights<I: IntoIterator<Item = Weight>>(ws: I) -> KClass {
        let mut c = KClass::empty();
        for w in ws {
            c.insert(w, 1);
        }
        c
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn multiplicity(&self, w: &Weight) -> i64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.0.iter().map(|(w, &m)| (w, m))
    }

    pub fn plus(&self, other: &KClass) -> KClass {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.insert(w.clone(), m);
        }
        out
    }

    pub fn minus(&self, other: &KClass) -> KClass {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.insert(w.clone(), -m);
        }
        out
    }

    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> KClass {
        let mut out = KClass::empty();
        for (w, m) in self.iter() {
            out.insert(f(w), m);
        }
        out
    }

    pub fn substitute(&self, assignment: &HashMap<Symbol, Weight>) -> KClass {
        self.map_weights(|w| w.substitute(assignment))
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (w, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
            if m != 1 {
                write!(f, " ×{m}")?;
            }
        }
        write!(f, "}}")
    }
}

/// `v = v1 + v2`, `w = w1 + w2`: the first `v1_i` (`w1_i`) indices of each
/// block are in degree 0, the rest in degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeSplit {
    pub v1: DimVec,
    pub v2: DimVec,
    pub w1: DimVec,
    pub w2: DimVec,
}

impl GradeSplit {
    pub fn new(v1: DimVec, v2: DimVec, w1: DimVec, w2: DimVec) -> GradeSplit {
        let n = v1.len();
        assert!(
            v2.len() == n && w1.len() == n && w2.len() == n,
            "grade split vectors of different length"
        );
        GradeSplit { v1, v2, w1, w2 }
    }

    pub fn v(&self) -> DimVec {
        &self.v1 + &self.v2
    }

    pub fn w(&self) -> DimVec {
        &self.w1 + &self.w2
    }

    fn symbol_degree(&self, s: &Symbol) -> Option<i64> {
        let i = s.vertex().checked_sub(1)?;
        let (first, total) = if s.is_chern() {
            (*self.v1.0.get(i)?, self.v1[i] + self.v2[i])
        } else if s.is_framing() {
            (*self.w1.0.get(i)?, self.w1[i] + self.w2[i])
        } else {
            return None;
        };
        match s.index() {
            k if k <= first => Some(0),
            k if k <= total => Some(1),
            _ => None,
        }
    }

    /// Degree of a weight of a graded Hom space: `deg(target) − deg(source)`.
    pub fn weight_degree(&self, w: &Weight) -> Result<i64> {
        let mut target = None;
        let mut source = None;
        for (s, c) in w.terms().filter(|(s, _)| !s.is_hbar()) {
            match c {
                1 if target.is_none() => target = Some(s),
                -1 if source.is_none() => source = Some(s),
                _ => return Err(Error::IllFormedClass(format!("weight {w}"))),
            }
        }
        match (target, source) {
            (None, None) => Ok(0),
            (Some(t), Some(s)) => {
                let dt = self.symbol_degree(&t);
                let ds = self.symbol_degree(&s);
                match (dt, ds) {
                    (Some(dt), Some(ds)) => Ok(dt - ds),
                    _ => Err(Error::IllFormedClass(format!(
                        "weight {w} mentions an index outside the split"
                    ))),
                }
            }
            _ => Err(Error::IllFormedClass(format!("weight {w}"))),
        }
    }
}

/// `T*Rep(v, w)`: arrows, reversed arrows (+h), `Hom(V_i, W_i)` and the
/// dual `Hom(W_i, V_i)` (+h).
pub fn class_trep(q: &Quiver, v: &DimVec, w: &DimVec) -> Result<KClass> {
    q.check_dims(v)?;
    q.check_dims(w)?;
    let mut c = KClass::empty();
    for &(t, hd) in q.arrows() {
        for alpha in 1..=v[hd] {
            for beta in 1..=v[t] {
                let head = Symbol::s(hd + 1, alpha);
                let tail = Symbol::s(t + 1, beta);
                c.insert(Weight::hom(head, tail, 0), 1);
                c.insert(Weight::hom(tail, head, 1), 1);
            }
        }
    }
    for i in 0..q.num_vertices() {
        for alpha in 1..=v[i] {
            for k in 1..=w[i] {
                let s = Symbol::s(i + 1, alpha);
                let a = Symbol::a(i + 1, k);
                c.insert(Weight::hom(a, s, 0), 1);
                c.insert(Weight::hom(s, a, 1), 1);
            }
        }
    }
    Ok(c)
}

/// `shift·h ⊗ 𝔤_v`: weights `s(i,α) − s(i,β) + shift·h` over all ordered pairs.
pub fn class_gauge(q: &Quiver, v: &DimVec, shift: i64) -> Result<KClass> {
    q.check_dims(v)?;
    let mut c = KClass::empty();
    for i in 0..q.num_vertices() {
        for alpha in 1..=v[i] {
            for beta in 1..=v[i] {
                c.insert(
                    Weight::hom(Symbol::s(i + 1, alpha), Symbol::s(i + 1, beta), shift),
                    1,
                );
            }
        }
    }
    Ok(c)
}

/// The part of `c` in the given degree (`-1`, `0` or `1`).
pub fn grade_part(c: &KClass, split: &GradeSplit, degree: i64) -> Result<KClass> {
    let mut out = KClass::empty();
    for (w, m) in c.iter() {
        if split.weight_degree(w)? == degree {
            out.insert(w.clone(), m);
        }
    }
    Ok(out)
}

/// Euler class: product of weights, negative multiplicities in the denominator.
pub fn euler(c: &KClass) -> Result<RatFun> {
    let mut num = Poly::one();
    let mut den = Vec::new();
    for (w, m) in c.iter() {
        if m < 0 {
            if w.is_zero() {
                return Err(Error::ZeroWeightInDenominator);
            }
            den.push((w.to_poly(), m.unsigned_abs() as u32));
        }
    }
    if c.multiplicity(&Weight::zero()) > 0 {
        return Ok(RatFun::zero());
    }
    for (w, m) in c.iter().filter(|&(_, m)| m > 0) {
        num = num * w.to_poly().pow(m as u32);
    }
    RatFun::from_factored(num, den)
}

/// Euler class of a class with no negative multiplicities.
pub fn euler_poly(c: &KClass) -> Result<Poly> {
    euler(c)?
        .into_poly()
        .ok_or_else(|| Error::IllFormedClass("expected an actual (non-virtual) class".into()))
}

/// `T naka(v, w) = T*Rep(v, w) − 𝔤_v − h𝔤_v`.
pub fn tangent_naka(q: &Quiver, v: &DimVec, w: &DimVec) -> Result<KClass> {
    Ok(class_trep(q, v, w)?
        .minus(&class_gauge(q, v, 0)?)
        .minus(&class_gauge(q, v, 1)?))
}

/// Graded pieces of the normal classes to `naka(v1,w1) × naka(v2,w2)` and to
/// the corresponding product of representation stacks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalParts {
    /// `N[−1] = T*Rep[−1] − 𝔤[−1] − h𝔤[−1]`
    pub n_minus: KClass,
    /// `N[1] = T*Rep[1] − 𝔤[1] − h𝔤[1]`
    pub n_plus: KClass,
    /// `𝔑[−1] = T*Rep[−1] − 𝔤[−1]`
    pub stack_minus: KClass,
    /// `𝔑[1] = T*Rep[1] − 𝔤[1]`
    pub stack_plus: KClass,
}

pub fn normal_split(q: &Quiver, split: &GradeSplit) -> Result<NormalParts> {
    let (v, w) = (split.v(), split.w());
    let trep = class_trep(q, &v, &w)?;
    let g = class_gauge(q, &v, 0)?;
    let hg = class_gauge(q, &v, 1)?;
    let part = |c: &KClass, d| grade_part(c, split, d);
    let stack_minus = part(&trep, -1)?.minus(&part(&g, -1)?);
    let stack_plus = part(&trep, 1)?.minus(&part(&g, 1)?);
    Ok(NormalParts {
        n_minus: stack_minus.minus(&part(&hg, -1)?),
        n_plus: stack_plus.minus(&part(&hg, 1)?),
        stack_minus,
        stack_plus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::parse_poly;

    fn dv(x: &[usize]) -> DimVec {
        DimVec(x.to_vec())
    }

    fn weights(texts: &[&str]) -> KClass {
        KClass::from_weights(texts.iter().map(|t| Weight::parse(t).unwrap()))
    }

    #[test]
    fn trep_of_a1() {
        let c = class_trep(&Quiver::a1(), &dv(&[1]), &dv(&[2])).unwrap();
        let expected = weights(&[
            "a(1,1) - s(1,1)",
            "a(1,2) - s(1,1)",
            "s(1,1) - a(1,1) + h",
            "s(1,1) - a(1,2) + h",
        ]);
        assert_eq!(c, expected);
    }

    #[test]
    fn trep_of_jordan_loop() {
        let c = class_trep(&Quiver::jordan(), &dv(&[1]), &dv(&[0])).unwrap();
        assert_eq!(c, weights(&["0", "h"]));
        assert!(class_trep(&Quiver::jordan(), &dv(&[0]), &dv(&[3]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn trep_rejects_bad_dims() {
        assert!(matches!(
            class_trep(&Quiver::a2(), &dv(&[1]), &dv(&[1, 1])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn gauge_classes() {
        let c = class_gauge(&Quiver::a1(), &dv(&[2]), 1).unwrap();
        assert_eq!(
            c,
            weights(&["h", "h", "s(1,1)-s(1,2)+h", "s(1,2)-s(1,1)+h"])
        );
        assert_eq!(class_gauge(&Quiver::a1(), &dv(&[1]), 0).unwrap(), weights(&["0"]));
        assert!(class_gauge(&Quiver::a1(), &dv(&[0]), 0).unwrap().is_empty());
    }

    #[test]
    fn grade_parts_of_a1() {
        let c = class_trep(&Quiver::a1(), &dv(&[1]), &dv(&[2])).unwrap();
        let split = GradeSplit::new(dv(&[1]), dv(&[0]), dv(&[1]), dv(&[1]));
        assert_eq!(
            grade_part(&c, &split, -1).unwrap(),
            weights(&["s(1,1) - a(1,2) + h"])
        );
        let split = GradeSplit::new(dv(&[0]), dv(&[1]), dv(&[1]), dv(&[1]));
        assert_eq!(grade_part(&c, &split, -1).unwrap(), weights(&["a(1,1) - s(1,1)"]));
        let split = GradeSplit::new(dv(&[1]), dv(&[0]), dv(&[2]), dv(&[0]));
        assert!(grade_part(&c, &split, -1).unwrap().is_empty());
    }

    #[test]
    fn grade_part_rejects_foreign_weights() {
        let c = weights(&["a(1,1) + s(1,1)"]);
        let split = GradeSplit::new(dv(&[1]), dv(&[0]), dv(&[1]), dv(&[0]));
        assert!(matches!(
            grade_part(&c, &split, 0),
            Err(Error::IllFormedClass(_))
        ));
    }

    #[test]
    fn euler_examples() {
        let c = class_gauge(&Quiver::a1(), &dv(&[2]), 1).unwrap();
        let e = euler(&c).unwrap();
        let expected = parse_poly("h^2*(h^2 - (s(1,1)-s(1,2))^2)").unwrap();
        assert_eq!(e.as_poly(), Some(&expected));
        assert_eq!(euler(&KClass::empty()).unwrap().as_poly(), Some(&Poly::one()));

        let mut virt = KClass::empty();
        virt.insert(Weight::parse("s(1,1)").unwrap(), 1);
        virt.insert(Weight::parse("h").unwrap(), -1);
        let e = euler(&virt).unwrap();
        assert_eq!(e, crate::symalg::parse_ratfun("s(1,1)/h").unwrap());

        assert!(euler(&weights(&["0", "h"])).unwrap().is_zero());
        let mut bad = KClass::empty();
        bad.insert(Weight::zero(), -1);
        assert!(matches!(euler(&bad), Err(Error::ZeroWeightInDenominator)));
    }

    #[test]
    fn tangent_ranks() {
        let t = tangent_naka(&Quiver::a1(), &dv(&[1]), &dv(&[2])).unwrap();
        assert_eq!(t.rank(), 2);
        let t0 = tangent_naka(&Quiver::a1(), &dv(&[0]), &dv(&[2])).unwrap();
        assert_eq!(t0.rank(), 0);
        assert!(t0.is_empty());
    }

    #[test]
    fn tangent_restricts_to_tp1_weights() {
        let t = tangent_naka(&Quiver::a1(), &dv(&[1]), &dv(&[2])).unwrap();
        let mut asg = HashMap::new();
        asg.insert(Symbol::s(1, 1), Weight::parse("a(1,1)").unwrap());
        let r = t.substitute(&asg);
        assert_eq!(r, weights(&["a(1,2) - a(1,1)", "a(1,1) - a(1,2) + h"]));
    }

    #[test]
    fn quiver_json_round_trip() {
        let q = Quiver::from_json(r#"{"vertices": ["x", 2], "arrows": [["x", 2], [2, 2]]}"#)
            .unwrap();
        assert_eq!(q.arrows(), &[(0, 1), (1, 1)]);
        assert_eq!(q.adjacency(), vec![vec![0, 1], vec![0, 1]]);
        let again = Quiver::from_json(&q.to_json()).unwrap();
        assert_eq!(again, q);
        assert_eq!(again.hash(), q.hash());
        assert!(Quiver::from_json(r#"{"vertices": [1], "arrows": [[1, 3]]}"#).is_err());
    }
}
