#![allow(dead_code)]

use nilquad::abelian::{int, CanonicalGroup, IntMatrix, Presentation};
use nilquad::chaincx::{moore_complex, ChainComplex, Degree};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// A random unimodular `n×n` matrix and its inverse.
pub fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = int(rng.gen_range(-2..=2));
        u.add_row_multiple(i, j, &c);
        inv.add_col_multiple(j, i, &-c);
    }
    (u, inv)
}

/// A random free complex in degrees `0..=max_deg` with total rank at most
/// `max_rank`, assembled from Moore pieces, free and contractible summands
/// and then scrambled by unimodular changes of basis.
pub fn random_complex(rng: &mut ChaCha8Rng, max_deg: Degree, max_rank: usize) -> ChainComplex {
    let mut c = ChainComplex::zero();
    while c.total_rank() + 2 <= max_rank {
        let n = rng.gen_range(0..=max_deg);
        let piece = match rng.gen_range(0..4) {
            0 => ChainComplex::free_in(n, 1),
            1 if n < max_deg => moore_complex(&CanonicalGroup::cyclic(rng.gen_range(2..7)), n),
            2 if n < max_deg => {
                ChainComplex::new(n, vec![1, 1], vec![IntMatrix::zeros(0, 1), IntMatrix::from_rows(&[vec![1]])]).unwrap()
            }
            _ => ChainComplex::free_in(n, 1),
        };
        c = c.direct_sum(&piece);
        if rng.gen_bool(0.3) {
            break;
        }
    }
    scramble(rng, &c)
}

pub fn scramble(rng: &mut ChaCha8Rng, c: &ChainComplex) -> ChainComplex {
    let Some((lo, hi)) = c.support() else { return c.clone() };
    let us: Vec<(IntMatrix, IntMatrix)> = (lo..=hi).map(|n| unimodular(rng, c.rank(n))).collect();
    let ranks = (lo..=hi).map(|n| c.rank(n)).collect();
    let bds = (lo..=hi)
        .map(|n| {
            if n == lo {
                return IntMatrix::zeros(0, c.rank(n));
            }
            let k = (n - lo) as usize;
            us[k - 1].0.mul(&c.boundary(n)).mul(&us[k].1)
        })
        .collect();
    ChainComplex::new(lo, ranks, bds).unwrap()
}

/// A non-minimal presentation of `a`: one extra generator killed by a
/// relation, then mixed in by row and column operations depending on `seed`.
pub fn scrambled_presentation(a: &CanonicalGroup, seed: i64) -> Presentation {
    let p = a.presentation();
    let g = p.generators + 1;
    let mut rel = IntMatrix::zeros(g, p.relations.cols() + 1);
    rel.set_block(0, 0, &p.relations);
    rel[(g - 1, p.relations.cols())] = int(1);
    for k in 0..g - 1 {
        rel[(k, p.relations.cols())] = int(seed);
        rel.add_row_multiple(k, g - 1, &int(seed + k as i64));
    }
    if p.relations.cols() > 0 {
        rel.add_col_multiple(0, p.relations.cols(), &int(seed - 1));
    }
    Presentation::new(g, rel).unwrap()
}

pub fn order(g: &CanonicalGroup) -> Option<BigInt> {
    g.order()
}

pub mod bypes {
    use nilquad::abelian::{enumerate_elements, functor_subquotient, BinaryKind, CanonicalGroup};
    use nilquad::bype::model::hom_from_coords;
    use nilquad::bype::{Bype, F2Matrix, StableBype};
    use nilquad::chaincx::{Degree, GradedGroup};
    use num_bigint::BigInt;
    use rand::seq::SliceRandom;
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    pub fn component(rng: &mut ChaCha8Rng) -> CanonicalGroup {
        let two = BigInt::from(2);
        [CanonicalGroup::cyclic(2), CanonicalGroup::cyclic(4), CanonicalGroup::from_orders(0, &[two.clone(), two])]
            .choose(rng)
            .unwrap()
            .clone()
    }

    /// Components in `{Z/2, Z/4, Z/2⊕Z/2}` over `lo..lo+width`.
    pub fn groups(rng: &mut ChaCha8Rng, lo: Degree, width: Degree) -> GradedGroup {
        let mut g = GradedGroup::new();
        while g.degrees().len() < 2 {
            for n in lo..lo + width {
                if rng.gen_bool(0.6) {
                    g.set(n, component(rng));
                }
            }
        }
        g
    }

    fn random_element(rng: &mut ChaCha8Rng, g: &CanonicalGroup) -> Vec<BigInt> {
        let all: Vec<Vec<BigInt>> = enumerate_elements(g).unwrap().collect();
        all.choose(rng).unwrap().clone()
    }

    /// Random `b`, its canonical lift, then `β_n` moved by a random `Δ`-image.
    pub fn bype(rng: &mut ChaCha8Rng, groups: &GradedGroup) -> Bype {
        let mut x = Bype::zero(groups.clone());
        let model = x.model().unwrap();
        for (n, g) in groups.iter() {
            let s = model.sq(n - 1).unwrap().group().clone();
            let hom = functor_subquotient(BinaryKind::Hom, &g.presentation(), &s.presentation());
            let c = random_element(rng, hom.group());
            x.b.insert(n, hom_from_coords(g, &s, &c));
        }
        x.lift_beta(&model).unwrap();
        for (n, g) in groups.iter() {
            let p = model.pseudo(g, n - 1).unwrap();
            let e = random_element(rng, &p.ext);
            let d = p.delta.apply(&e);
            let beta: Vec<BigInt> = x.beta[&n].iter().zip(&d).map(|(a, b)| a + b).collect();
            x.beta.insert(n, p.group().reduce(&beta));
        }
        x
    }

    pub fn f2(rng: &mut ChaCha8Rng, r: usize, c: usize) -> F2Matrix {
        let mut m = F2Matrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, rng.gen_bool(0.5));
            }
        }
        m
    }

    pub fn stable(rng: &mut ChaCha8Rng, groups: &GradedGroup) -> StableBype {
        let mut s = StableBype::zero(groups.clone());
        for (n, k) in s.slots() {
            if k >= 2 {
                let (r, c) = s.b_shape(n, k);
                s.b.insert((n, k), f2(rng, r, c));
            }
            let (r, c) = s.beta_shape(n, k);
            s.beta.insert((n, k), f2(rng, r, c));
        }
        s.normalized()
    }

    /// `β^k_{n−1} += b_n^{k+1}δ_n` for random `δ_n`.
    pub fn shift_by_random_delta(rng: &mut ChaCha8Rng, s: &StableBype) -> StableBype {
        let mut t = s.clone();
        let ns: std::collections::BTreeSet<Degree> = s.groups.degrees().into_iter().flat_map(|d| [d, d + 1]).collect();
        for n in ns {
            let r = nilquad::bype::stable::tensor_dim(&s.groups.get(n));
            let c = nilquad::bype::stable::tor_dim(&s.groups.get(n - 1));
            let delta = f2(rng, r, c);
            for (m, k) in s.slots().into_iter().filter(|&(m, _)| m == n - 1) {
                let add = s.get_b(n, k + 1).mul(&delta);
                t.beta.insert((m, k), t.get_beta(m, k).add(&add));
            }
        }
        t.normalized()
    }
}
