mod common;

use cohastab::cache::{request_key, Cache};
use cohastab::symalg::{
    parse_poly, parse_ratfun, rat, shuffle_sum, subsets, Monomial, Poly, RatFun, ShuffleSplit, Symbol,
};
use common::{elementary, var};
use proptest::prelude::*;

fn symbols() -> [Symbol; 4] {
    [Symbol::s(1, 1), Symbol::s(1, 2), Symbol::a(1, 1), Symbol::H]
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..3, 4)), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, exps)| {
                let m = Monomial::from_factors(symbols().into_iter().zip(exps));
                Poly::term(rat(c), m)
            })
            .sum()
    })
}

fn linear_form() -> impl Strategy<Value = Poly> {
    prop::sample::select(vec![
        "s(1,1) - s(1,2)",
        "s(1,1) + h",
        "a(1,1) - s(1,2) + 2*h",
        "h",
        "s(1,2) - a(1,1) - h",
    ])
    .prop_map(|t| parse_poly(t).unwrap())
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(), prop::collection::vec(linear_form(), 0..3)).prop_map(|(num, den)| {
        RatFun::from_factored(num, den.into_iter().map(|d| (d, 1))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(f in ratfun(), g in ratfun(), k in ratfun()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.add(&g).mul(&k), f.mul(&k).add(&g.mul(&k)));
        prop_assert_eq!(f.mul(&g).mul(&k), f.mul(&g.mul(&k)));
        prop_assert!(f.sub(&f).is_zero());
        if !g.is_zero() {
            prop_assert_eq!(f.div(&g).unwrap().mul(&g), f.clone());
        }
        prop_assert!(f.div(&RatFun::zero()).is_err());
    }

    #[test]
    fn printing_round_trips(f in ratfun(), p in poly()) {
        let text = f.to_string();
        let back = parse_ratfun(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, f);
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn divided_difference_inverts_antisymmetrization(p in poly()) {
        let (x, y) = (Symbol::s(1, 1), Symbol::s(1, 2));
        let d = p.divided_difference(x, y);
        prop_assert_eq!(&(&var(x) - &var(y)) * &d, &p - &p.swap(x, y));
        prop_assert!(d.is_symmetric_in(&[x, y]));
    }

    #[test]
    fn shuffle_sum_matches_subset_sum(
        n1 in 1usize..=2,
        n2 in 1usize..=2,
        ks in prop::collection::vec((0usize..=2, 0usize..=2, -2i64..=2, 0u32..2), 1..3),
    ) {
        let first: Vec<Symbol> = (1..=n1).map(|a| Symbol::s(1, a)).collect();
        let second: Vec<Symbol> = (n1 + 1..=n1 + n2).map(|b| Symbol::s(1, b)).collect();
        let g: Poly = ks
            .iter()
            .map(|&(k1, k2, c, hp)| {
                elementary(&first, k1.min(n1))
                    * elementary(&second, k2.min(n2)).pow(2)
                    * (Poly::int(c) + Poly::h().pow(hp))
            })
            .sum();
        let cross: Vec<(Poly, u32)> = first
            .iter()
            .flat_map(|&a| second.iter().map(move |&b| (&var(b) - &var(a), 1)))
            .collect();
        let f = RatFun::from_factored(g, cross).unwrap();

        let n = n1 + n2;
        let mut oracle = RatFun::zero();
        for chosen in subsets(n, n1) {
            let rest: Vec<usize> = (0..n).filter(|j| !chosen.contains(j)).collect();
            let image: Vec<usize> = chosen.iter().chain(&rest).copied().collect();
            let renamed = f.rename(|s| if s.is_chern() { s.with_index(image[s.index() - 1] + 1) } else { s });
            oracle = oracle.add(&renamed);
        }
        let got = shuffle_sum(&f, &ShuffleSplit::new(vec![n1], vec![n2])).unwrap();
        prop_assert_eq!(&got, &oracle);
        let all: Vec<Symbol> = (1..=n).map(|a| Symbol::s(1, a)).collect();
        prop_assert!(got.as_poly().is_some_and(|p| p.is_symmetric_in(&all)));
    }

    #[test]
    fn cache_round_trips(parts in prop::collection::vec(".{0,12}", 0..4), payload in "(?s).{0,200}") {
        let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
        let key = request_key(&refs);
        prop_assert_eq!(key.len(), 64);
        prop_assert_eq!(&key, &request_key(&refs));
        let joined = parts.concat();
        if parts.len() > 1 {
            prop_assert_ne!(&key, &request_key(&[joined.as_str()]));
        }
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        prop_assert_eq!(cache.get(&key), None);
        cache.put(&key, &payload).unwrap();
        prop_assert_eq!(cache.get(&key), Some(payload));
    }
}
