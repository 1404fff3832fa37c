use std::collections::BTreeMap;

use levelzero::arith::{binomial, factorial};
use levelzero::rep::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn t(w: &Perm) -> HeckeElement {
    HeckeElement::basis(w.clone())
}

fn poly(c: &[i64]) -> Poly {
    Poly(c.iter().map(|&x| BigInt::from(x)).collect())
}

// ---------- permutations ----------

#[test]
fn permutation_basics() {
    for n in 1..=6 {
        let perms = all_perms(n);
        assert_eq!(perms.len() as u64, factorial(n as u64));
        assert!(perms.windows(2).all(|w| w[0] < w[1]));
        for w in &perms {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let rebuilt = word.iter().fold(Perm::identity(n), |acc, &i| acc.compose(&Perm::simple(n, i)));
            assert_eq!(&rebuilt, w);
            assert_eq!(w.compose(&w.inverse()), Perm::identity(n));
            assert_eq!(w.inverse().length(), w.length());
        }
    }
    assert_eq!(Perm::from_one_line(vec![1, 0, 2]).unwrap().to_string(), "[2 1 3]");
    assert!(Perm::from_one_line(vec![0, 0, 2]).is_none());
}

// ---------- Hecke algebra ----------

#[test]
fn hecke_relations() {
    for n in 2..=5 {
        let one = HeckeElement::identity(n);
        for w in all_perms(n).iter().step_by(7) {
            assert_eq!(one.mul(&t(w)), t(w));
            assert_eq!(t(w).mul(&one), t(w));
        }
        for i in 0..n - 1 {
            let s = Perm::simple(n, i);
            let expected = HeckeElement::monomial(Perm::identity(n), Poly::t())
                .add(&HeckeElement::monomial(s.clone(), poly(&[-1, 1])));
            assert_eq!(t(&s).mul(&t(&s)), expected);
            if i + 2 < n {
                let u = Perm::simple(n, i + 1);
                assert_eq!(t(&s).mul(&t(&u)).mul(&t(&s)), t(&u).mul(&t(&s)).mul(&t(&u)));
            }
            for j in i + 2..n - 1 {
                let u = Perm::simple(n, j);
                assert_eq!(t(&s).mul(&t(&u)), t(&u).mul(&t(&s)));
            }
        }
    }
}

#[test]
fn right_multiplication_by_generators() {
    // the product is computed through left generators; check the right-handed rule
    for n in 2..=4 {
        for w in all_perms(n) {
            for i in 0..n - 1 {
                let s = Perm::simple(n, i);
                let ws = w.compose(&s);
                let got = t(&w).mul(&t(&s));
                if ws.length() > w.length() {
                    assert_eq!(got, t(&ws));
                } else {
                    let expected =
                        HeckeElement::monomial(ws, Poly::t()).add(&HeckeElement::monomial(w.clone(), poly(&[-1, 1])));
                    assert_eq!(got, expected);
                }
            }
        }
    }
}

#[test]
fn length_additive_products() {
    for n in 2..=4 {
        for v in all_perms(n) {
            for w in all_perms(n) {
                let vw = v.compose(&w);
                if vw.length() == v.length() + w.length() {
                    assert_eq!(t(&v).mul(&t(&w)), t(&vw));
                }
            }
        }
    }
}

#[test]
fn specialization_at_one_is_the_group_algebra() {
    let one = BigInt::from(1);
    for n in 1..=4 {
        let perms = all_perms(n);
        for v in &perms {
            for w in &perms {
                let prod = t(v).mul(&t(w)).specialize(&one);
                let expected: BTreeMap<Perm, BigInt> = [(v.compose(w), one.clone())].into_iter().collect();
                assert_eq!(prod, expected);
            }
        }
    }
}

fn arb_element(n: usize) -> impl Strategy<Value = HeckeElement> {
    let k = factorial(n as u64) as usize;
    prop::collection::vec((0..k, -3i64..4, -3i64..4), 1..4).prop_map(move |terms| {
        let perms = all_perms(n);
        terms.into_iter().fold(HeckeElement::zero(n), |acc, (i, a, b)| {
            acc.add(&HeckeElement::monomial(perms[i].clone(), poly(&[a, b])))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn hecke_associativity(
        (a, b, c) in (2usize..=5).prop_flat_map(|n| (arb_element(n), arb_element(n), arb_element(n)))
    ) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }
}

/// Π_i [μ_i]_t! expanded by multiplying (1 + t + … + t^{k−1}) factors in i64.
fn q_factorial_product(mu: &Partition) -> Vec<i64> {
    let mut out = vec![1i64];
    for &m in mu.parts() {
        for k in 1..=m as usize {
            let mut next = vec![0i64; out.len() + k - 1];
            for (i, &a) in out.iter().enumerate() {
                for j in 0..k {
                    next[i + j] += a;
                }
            }
            out = next;
        }
    }
    out
}

#[test]
fn x_mu_examples() {
    for n in 1..=4u32 {
        let ones = Partition::new(vec![1; n as usize]).unwrap();
        assert_eq!(x_mu(&ones), HeckeElement::identity(n as usize));
        assert_eq!(ideal_rank(&ones, 2) as u64, factorial(n as u64));
        let full = Partition::new(vec![n]).unwrap();
        assert_eq!(x_mu(&full).terms.len() as u64, factorial(n as u64));
        assert_eq!(ideal_rank(&full, 2), 1);
    }
    let ranks: Vec<usize> = partitions(4).iter().map(|mu| ideal_rank(mu, 3)).collect();
    assert_eq!(ranks, vec![1, 4, 6, 12, 24]);
}

#[test]
fn x_mu_squared_is_poincare_multiple() {
    for n in 1..=5 {
        for mu in partitions(n) {
            let p = poincare_polynomial(&mu);
            assert_eq!(p, poly(&q_factorial_product(&mu)));
            // P_μ(t) = Σ_{w ∈ S_μ} t^{ℓ(w)}
            let mut by_len = vec![0i64; p.0.len()];
            for w in young_subgroup(&mu) {
                by_len[w.length()] += 1;
            }
            assert_eq!(p, poly(&by_len));
            let x = x_mu(&mu);
            assert_eq!(x.mul(&x), x.scale(&p), "μ = {mu}");
        }
    }
}

#[test]
fn ideal_ranks_are_multinomials() {
    for n in 1..=5 {
        for mu in partitions(n) {
            let expected = factorial(n as u64) / mu.parts().iter().map(|&m| factorial(m as u64)).product::<u64>();
            for tv in [2, 4] {
                assert_eq!(ideal_rank(&mu, tv) as u64, expected, "μ = {mu}, t = {tv}");
            }
        }
    }
}

// ---------- partitions and Kostka numbers ----------

#[test]
fn partition_basics() {
    let counts: Vec<usize> = (1..=12).map(|n| partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    assert_eq!(partitions(3), vec![part("(3)"), part("(2,1)"), part("(1,1,1)")]);
    assert_eq!(part("(3,1,1)").to_string(), "(3,1,1)");
    assert!("(1,2)".parse::<Partition>().is_err());
    assert!("(a)".parse::<Partition>().is_err());
    assert_eq!(Partition::hook(4, 1), part("(2,1,1)"));
    for n in 1..=8 {
        let ps = partitions(n);
        for a in &ps {
            assert_eq!(a.conjugate().conjugate(), *a);
            assert_eq!(a.conjugate().size(), n);
            for b in &ps {
                if a.dominates(b) && b.dominates(a) {
                    assert_eq!(a, b);
                }
                // conjugation reverses dominance
                assert_eq!(a.dominates(b), b.conjugate().dominates(&a.conjugate()));
                for c in &ps {
                    if a.dominates(b) && b.dominates(c) {
                        assert!(a.dominates(c));
                    }
                }
            }
        }
    }
}

/// Fillings of λ with content μ that are weakly increasing in rows and
/// strictly increasing in columns, by brute force.
fn kostka_brute(lambda: &[u32], mu: &[u32]) -> u64 {
    let cells: Vec<(usize, usize)> =
        lambda.iter().enumerate().flat_map(|(r, &l)| (0..l as usize).map(move |c| (r, c))).collect();
    let offsets: Vec<usize> = lambda
        .iter()
        .scan(0, |acc, &l| {
            let o = *acc;
            *acc += l as usize;
            Some(o)
        })
        .collect();
    fn go(i: usize, cells: &[(usize, usize)], offsets: &[usize], fill: &mut Vec<usize>, left: &mut Vec<u32>) -> u64 {
        if i == cells.len() {
            return 1;
        }
        let (r, c) = cells[i];
        let mut total = 0;
        for v in 0..left.len() {
            if left[v] == 0 || (c > 0 && fill[i - 1] > v) || (r > 0 && fill[offsets[r - 1] + c] >= v) {
                continue;
            }
            fill[i] = v;
            left[v] -= 1;
            total += go(i + 1, cells, offsets, fill, left);
            left[v] += 1;
        }
        total
    }
    let mut fill = vec![0; cells.len()];
    go(0, &cells, &offsets, &mut fill, &mut mu.to_vec())
}

#[test]
fn kostka_examples_and_brute_force() {
    assert_eq!(kostka(&part("(2,1)"), &part("(1,1,1)")), 2);
    assert_eq!(kostka(&part("(3)"), &part("(2,1)")), 1);
    assert_eq!(kostka(&part("(2,1)"), &part("(3)")), 0);
    for n in 1..=7 {
        let ps = partitions(n);
        for l in &ps {
            assert_eq!(kostka(l, l), 1);
            for m in &ps {
                assert_eq!(kostka(l, m), kostka_brute(l.parts(), m.parts()), "K_{l},{m}");
            }
        }
    }
}

#[test]
fn kostka_is_dominance_unitriangular() {
    for n in 1..=8 {
        let (ps, k) = kostka_matrix(n);
        for (i, l) in ps.iter().enumerate() {
            for (j, m) in ps.iter().enumerate() {
                let v = *k.get(i, j);
                if v != 0 {
                    assert!(l.dominates(m), "K_{l},{m} = {v}");
                }
                if j < i {
                    assert_eq!(v, 0);
                }
            }
        }
    }
}

#[test]
fn elliptic_coefficients_invert_kostka() {
    let (ps, a) = elliptic_coefficients(3).unwrap();
    assert_eq!(ps, partitions(3));
    assert_eq!(a.data, vec![1, 0, 0, -1, 1, 0, 1, -2, 1]);
    for e in 1..=9 {
        let (ps, a) = elliptic_coefficients(e).unwrap();
        let (_, k) = kostka_matrix(e);
        let n = ps.len();
        // Σ_μ a_{λμ} K_{νμ} = δ_{λν}
        for l in 0..n {
            for nu in 0..n {
                let s: i64 = (0..n).map(|mu| a.get(l, mu) * k.get(nu, mu)).sum();
                assert_eq!(s, (l == nu) as i64);
            }
            assert_eq!(*a.get(l, l), 1);
        }
    }
    assert!(elliptic_coefficients(13).is_err());
}

#[test]
fn hook_criterion_for_trivial_column() {
    for e in 1..=9u32 {
        let (ps, a) = elliptic_coefficients(e).unwrap();
        let col = ps.iter().position(|p| p.parts() == [e]).unwrap();
        for (i, l) in ps.iter().enumerate() {
            let v = *a.get(i, col);
            assert_eq!(v != 0, l.is_hook(), "e={e} λ={l}");
            if l.is_hook() {
                let leg = l.len() as u32 - 1;
                assert_eq!(v, if leg.is_multiple_of(2) { 1 } else { -1 });
            }
        }
    }
}

#[test]
fn specht_dimensions() {
    for e in 1..=9u32 {
        let ps = partitions(e);
        let total: BigInt = ps.iter().map(|l| specht_dim(l) * specht_dim(l)).sum();
        assert_eq!(total, BigInt::from(factorial(e as u64)));
        assert_eq!(specht_dim(&Partition::new(vec![e]).unwrap()), BigInt::from(1));
        for i in 0..e {
            assert_eq!(specht_dim(&Partition::hook(e, i)), BigInt::from(binomial(e as u64 - 1, i as u64)));
        }
        let ones = Partition::new(vec![1; e as usize]).unwrap();
        if e <= 7 {
            for l in &ps {
                assert_eq!(specht_dim(l), BigInt::from(kostka(l, &ones)));
            }
        }
    }
}

// ---------- descent sets ----------

/// Count of permutations with ascent set exactly I, by inclusion–exclusion
/// over the multinomials counting permutations ascending off a subset.
fn descent_oracle(e: u32, set: &[u32]) -> i64 {
    let k = set.len();
    let mut total = 0i64;
    for m in 0u32..(1 << k) {
        let sub: Vec<u32> = (0..k).filter(|&j| m >> j & 1 == 1).map(|j| set[j]).collect();
        // permutations whose ascents lie inside `sub` decrease between its positions
        let mut cuts = vec![0];
        cuts.extend(sub.iter().copied());
        cuts.push(e);
        let mut mult = factorial(e as u64) as i64;
        for w in cuts.windows(2) {
            mult /= factorial((w[1] - w[0]) as u64) as i64;
        }
        let sign = if (k - sub.len()).is_multiple_of(2) { 1 } else { -1 };
        total += sign * mult;
    }
    total
}

#[test]
fn descent_examples() {
    assert_eq!(ascent_set(&[0, 2, 1]), vec![1]);
    assert_eq!(descent_count(4, &[]).unwrap(), 1);
    assert_eq!(descent_count(3, &[1]).unwrap(), 2);
    assert!(descent_count(3, &[3]).is_err());
    assert!(descent_count(11, &[]).is_err());
    assert!(is_hook_set(5, &[1, 2]));
    assert!(is_hook_set(5, &[3, 4]));
    assert!(!is_hook_set(5, &[2, 3]));
}

#[test]
fn descent_table_matches_inclusion_exclusion() {
    for e in 1..=8u32 {
        let table = descent_table(e).unwrap();
        assert_eq!(table.len(), 1 << (e - 1));
        assert_eq!(table.iter().map(|r| r.count).sum::<u64>(), factorial(e as u64));
        for row in &table {
            assert_eq!(row.count as i64, descent_oracle(e, &row.set), "e={e} I={:?}", row.set);
        }
    }
    for set in [vec![2u32, 5], vec![1, 3, 4]] {
        assert_eq!(descent_count(6, &set).unwrap() as i64, descent_oracle(6, &set));
    }
}

#[test]
fn binomial_count_characterizes_hook_sets() {
    for e in 1..=10u32 {
        let table = descent_table(e).unwrap();
        for row in &table {
            let binom = binomial(e as u64 - 1, row.set.len() as u64);
            assert_eq!(row.count == binom, is_hook_set(e, &row.set), "e={e} I={:?}", row.set);
        }
        if e >= 4 {
            for size in 2..e - 1 {
                let binom = binomial(e as u64 - 1, size as u64);
                assert!(table
                    .iter()
                    .any(|r| r.set.len() == size as usize && !is_hook_set(e, &r.set) && r.count != binom));
            }
        }
    }
}
