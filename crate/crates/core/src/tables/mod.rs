//! Closed-form homotopy tables: spheres and Moore objects in `sNil`, the
//! exterior square of spheres, Lie functors at odd primes and spheres in
//! `Nil^r` for `r ≤ 5`.
//!
//! Stems follow the group-category convention: `pi_sphere(cat, n, k)` is
//! `π_{n+k+1}(S^{n+1})`, computed as `π_{n+k}` of the nilized Milnor
//! construction on `S^n`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::{binary_functor, int, BinaryKind, CanonicalGroup};
use crate::error::{Error, Result};
use crate::quadratic::{gamma, lambda2, omega, r_functor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Nil2,
    Nil3,
    Nil4,
    Nil5,
}

impl FromStr for Category {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nil2" | "nil" => Ok(Category::Nil2),
            "nil3" => Ok(Category::Nil3),
            "nil4" => Ok(Category::Nil4),
            "nil5" => Ok(Category::Nil5),
            _ => Err(Error::InvalidArgument(format!("unknown category '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyQuery {
    pub category: Category,
    pub n: i64,
    pub k: i64,
}

fn z() -> CanonicalGroup {
    CanonicalGroup::z()
}

fn cyc(d: u64) -> CanonicalGroup {
    CanonicalGroup::cyclic(d)
}

fn check_n(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("sphere parameter n must be ≥ 1, got {n}")));
    }
    Ok(())
}

fn nil2_sphere(n: i64, k: i64) -> CanonicalGroup {
    match k {
        0 => z(),
        _ if k == n && k % 2 == 1 => z(),
        _ if 0 < k && k < n && k % 2 == 1 => cyc(2),
        _ => CanonicalGroup::trivial(),
    }
}

/// Gaps of the printed display (`n < k < 2n` with `k ≡ 1 mod 4`, and `k ≥ 2n`)
/// are read as 0.
fn nil3_sphere(n: i64, k: i64) -> CanonicalGroup {
    let r = k.rem_euclid(4);
    if k == 0 {
        z()
    } else if 0 < k && k < n && r == 1 {
        cyc(2)
    } else if 0 < k && k < n && r == 3 {
        cyc(6)
    } else if n < k && k < 2 * n && r == 3 {
        cyc(3)
    } else if k == n && n % 4 == 3 {
        z().direct_sum(&cyc(3))
    } else if k == n && n % 4 == 1 {
        z()
    } else {
        CanonicalGroup::trivial()
    }
}

/// `S²` and `S³` in `Nil⁴`, indexed by `i = n + k + 1`.
fn nil4_sphere(n: i64, i: i64) -> CanonicalGroup {
    match (n, i) {
        (1, 2 | 3) => z(),
        (1, 4) => cyc(2),
        (2, 3) => z(),
        (2, 4 | 5 | 8) => cyc(2),
        (2, 6) => cyc(6),
        _ => CanonicalGroup::trivial(),
    }
}

fn nil5_sphere(n: i64, i: i64) -> CanonicalGroup {
    match (n, i) {
        (2, 10) => cyc(5),
        _ => nil4_sphere(n, i),
    }
}

/// `π_{n+k+1}(S^{n+1})` in `Nil^r`.
pub fn pi_sphere(q: HomotopyQuery) -> Result<CanonicalGroup> {
    let HomotopyQuery { category, n, k } = q;
    check_n(n)?;
    match category {
        Category::Nil2 => Ok(nil2_sphere(n, k)),
        Category::Nil3 => Ok(nil3_sphere(n, k)),
        Category::Nil4 | Category::Nil5 if n > 2 => Err(Error::OpenInSource(format!(
            "{category:?} spheres are only known for S² and S³ (n ≤ 2), got n = {n}"
        ))),
        Category::Nil4 => Ok(nil4_sphere(n, n + k + 1)),
        Category::Nil5 => Ok(nil5_sphere(n, n + k + 1)),
    }
}

/// `π_{n+k} M(A, n)_nil`.
pub fn pi_moore(a: &CanonicalGroup, n: i64, k: i64) -> Result<CanonicalGroup> {
    check_n(n)?;
    let z2 = cyc(2);
    let tensor = || binary_functor(BinaryKind::Tensor, a, &z2);
    let tor = || binary_functor(BinaryKind::Tor, a, &z2);
    let even = k.rem_euclid(2) == 0;
    Ok(if k == 0 {
        a.clone()
    } else if 0 < k && k < n {
        if even {
            tor()
        } else {
            tensor()
        }
    } else if k == n {
        if even {
            lambda2(a).direct_sum(&tor())
        } else {
            gamma(a)
        }
    } else if k == n + 1 {
        if even {
            r_functor(a)
        } else {
            omega(a)
        }
    } else {
        CanonicalGroup::trivial()
    })
}

/// `π_{n+q} Λ² G^ab(S^{n+1})`.
pub fn pi_lambda2_sphere(n: i64, q: i64) -> Result<CanonicalGroup> {
    check_n(n)?;
    if q < 0 {
        return Err(Error::InvalidArgument(format!("q must be ≥ 0, got {q}")));
    }
    Ok(if n % 2 == 1 && q == n {
        z()
    } else if q % 2 == 1 && q <= 2 * (n / 2) - 1 {
        cyc(2)
    } else {
        CanonicalGroup::trivial()
    })
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `π_{n+k} L^p K(Z, n)` for an odd prime `p`.
pub fn pi_lie_p(p: u64, n: i64, k: i64) -> Result<CanonicalGroup> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("p must be an odd prime, got {p}")));
    }
    check_n(n)?;
    let step = 2 * (p as i64 - 1);
    let hit = (k + 1) % step == 0 && (1..=n / 2).contains(&((k + 1) / step));
    Ok(if hit { CanonicalGroup::from_orders(0, &[int(p as i64)]) } else { CanonicalGroup::trivial() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(category: Category, n: i64, k: i64) -> CanonicalGroup {
        pi_sphere(HomotopyQuery { category, n, k }).unwrap()
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(q(Category::Nil2, 3, 3), z());
        assert_eq!(q(Category::Nil3, 5, 3), cyc(6));
        assert_eq!(q(Category::Nil4, 2, 3), cyc(6));
        assert_eq!(q(Category::Nil5, 2, 7), cyc(5));
        assert!(matches!(
            pi_sphere(HomotopyQuery { category: Category::Nil4, n: 3, k: 1 }),
            Err(Error::OpenInSource(_))
        ));
    }

    #[test]
    fn moore_examples() {
        assert_eq!(pi_moore(&cyc(4), 2, 2).unwrap(), cyc(2));
        assert_eq!(pi_moore(&z(), 3, 3).unwrap(), z());
        // k = n + 1 = 5 is odd, so this is Ω(Z/3), not R(Z/3)
        assert_eq!(pi_moore(&cyc(3), 4, 5).unwrap(), cyc(3));
        assert!(pi_moore(&cyc(3), 3, 4).unwrap().is_trivial());
        assert!(pi_moore(&cyc(4), 2, 7).unwrap().is_trivial());
    }

    #[test]
    fn lambda2_and_lie_examples() {
        assert_eq!(pi_lambda2_sphere(3, 3).unwrap(), z());
        assert_eq!(pi_lambda2_sphere(4, 3).unwrap(), cyc(2));
        assert!(pi_lambda2_sphere(2, 2).unwrap().is_trivial());
        assert_eq!(pi_lie_p(3, 4, 3).unwrap(), cyc(3));
        assert_eq!(pi_lie_p(5, 2, 7).unwrap(), cyc(5));
        assert!((0..20).all(|k| pi_lie_p(3, 1, k).unwrap().is_trivial()));
        assert!(pi_lie_p(2, 4, 3).is_err());
        assert!(pi_lie_p(9, 4, 3).is_err());
    }
}
