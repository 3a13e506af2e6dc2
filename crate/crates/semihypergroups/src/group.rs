//! Finite groups as validated Cayley tables, a small catalog of isomorphism
//! classes up to order 8, regular representations as permutation matrices,
//! and isomorphism testing.
//!
//! Elements are the indices `0..n`. The identity can sit at any index; it is
//! discovered during validation, never assumed.

use num::Zero;
use thiserror::Error;

use crate::cube::Measure;
use crate::linalg::Mat;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    /// A row or column of the table repeats an element. The index is
    /// 0-based; the message uses 1-based notation.
    #[error("{} {} of the product table is not a permutation", if *row { "row" } else { "column" }, index + 1)]
    NotLatinSquare { row: bool, index: usize },
    /// Fields are 0-based witnesses of `(g_i g_j) g_k != g_i (g_j g_k)`;
    /// the message uses 1-based notation.
    #[error("products disagree at ({}, {}, {})", i + 1, j + 1, k + 1)]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("table is not square: {len} entries for n={n}")]
    ShapeMismatch { n: usize, len: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("only orders 1 through 8 are cataloged, got {0}")]
    UnsupportedOrder(usize),
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("groups have different orders {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("measure length {len} does not match group order {n}")]
    MeasureLengthMismatch { n: usize, len: usize },
}

/// A finite group given by its product table. Validated on construction:
/// the table must be a Latin square, associative, and therefore contain a
/// two-sided identity and inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    product: Vec<usize>, // row-major, product[i*n + j] = index of g_i g_j
    identity: usize,
    inverse: Vec<usize>,
}

impl CayleyTable {
    pub fn new(n: usize, product: Vec<usize>) -> Result<Self, GroupError> {
        if n == 0 || product.len() != n * n {
            return Err(GroupError::ShapeMismatch {
                n,
                len: product.len(),
            });
        }
        let at = |i: usize, j: usize| product[i * n + j];
        // Latin square: each row and column is a permutation of 0..n
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = at(i, j);
                let c = at(j, i);
                if r >= n || seen_row[r] {
                    return Err(GroupError::NotLatinSquare {
                        row: true,
                        index: i,
                    });
                }
                if c >= n || seen_col[c] {
                    return Err(GroupError::NotLatinSquare {
                        row: false,
                        index: i,
                    });
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if at(at(i, j), k) != at(i, at(j, k)) {
                        return Err(GroupError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| at(e, i) == i && at(i, e) == i))
            .ok_or(GroupError::NoIdentity)?;
        let inverse = (0..n)
            .map(|i| (0..n).find(|&j| at(i, j) == identity).expect("latin row"))
            .collect();
        Ok(Self {
            n,
            product,
            identity,
            inverse,
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self, GroupError> {
        let mut product = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                product.push(f(i, j));
            }
        }
        Self::new(n, product)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.product[i * self.n + j]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn product_table(&self) -> &[usize] {
        &self.product
    }

    /// Smallest `k >= 1` with `g^k = e`.
    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Left regular representation of `g_i`: `G_i e_j = e_{g_i g_j}`, i.e.
    /// entry `(k, j)` is 1 iff `g_i g_j = g_k`.
    pub fn left_regular(&self, i: usize) -> PermutationMatrix {
        PermutationMatrix {
            image: (0..self.n).map(|j| self.mul(i, j)).collect(),
        }
    }

    /// Right regular representation of `g_i`: entry `(k, j)` is 1 iff
    /// `g_j g_i = g_k`.
    pub fn right_regular(&self, i: usize) -> PermutationMatrix {
        PermutationMatrix {
            image: (0..self.n).map(|j| self.mul(j, i)).collect(),
        }
    }

    /// All subgroups as sorted element lists, ordered by size then elements.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let rest: Vec<usize> = (0..n).filter(|&i| i != self.identity).collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << rest.len()) {
            let mut set: Vec<usize> = vec![self.identity];
            for (b, &el) in rest.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    set.push(el);
                }
            }
            set.sort_unstable();
            let closed = set
                .iter()
                .all(|&a| set.iter().all(|&b| set.binary_search(&self.mul(a, b)).is_ok()));
            if closed {
                out.push(set);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// A permutation written as a 0-1 matrix; `image[j]` is the row holding the
/// 1 in column `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationMatrix {
    pub image: Vec<usize>,
}

impl PermutationMatrix {
    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_fn(self.n(), self.n(), |r, c| {
            if self.image[c] == r {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        })
    }
}

/// A bijection `map` with `map[x * y] = map[x] * map[y]` between two tables
/// of the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupIsomorphism {
    pub map: Vec<usize>,
}

/// Searches for an isomorphism from `g` onto `h`. Candidates are pruned by
/// element order; `None` means the groups are not isomorphic.
pub fn is_isomorphic(g: &CayleyTable, h: &CayleyTable) -> Result<Option<GroupIsomorphism>, GroupError> {
    if g.n() != h.n() {
        return Err(GroupError::OrderMismatch(g.n(), h.n()));
    }
    let n = g.n();
    let g_orders: Vec<usize> = (0..n).map(|i| g.element_order(i)).collect();
    let h_orders: Vec<usize> = (0..n).map(|i| h.element_order(i)).collect();
    {
        let mut a = g_orders.clone();
        let mut b = h_orders.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let order: Vec<usize> = (0..n).filter(|&i| i != g.identity()).collect();

    #[allow(clippy::too_many_arguments)]
    fn extend(
        g: &CayleyTable,
        h: &CayleyTable,
        g_orders: &[usize],
        h_orders: &[usize],
        order: &[usize],
        pos: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = g.n();
        if pos == order.len() {
            for i in 0..n {
                for j in 0..n {
                    if map[g.mul(i, j)] != h.mul(map[i], map[j]) {
                        return false;
                    }
                }
            }
            return true;
        }
        let x = order[pos];
        for y in 0..n {
            if used[y] || h_orders[y] != g_orders[x] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            // partial consistency against everything already mapped
            let ok = (0..n).all(|z| {
                if map[z] == usize::MAX {
                    return true;
                }
                let p1 = g.mul(x, z);
                let p2 = g.mul(z, x);
                (map[p1] == usize::MAX || map[p1] == h.mul(y, map[z]))
                    && (map[p2] == usize::MAX || map[p2] == h.mul(map[z], y))
            });
            if ok && extend(g, h, g_orders, h_orders, order, pos + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    if extend(g, h, &g_orders, &h_orders, &order, 0, &mut map, &mut used) {
        Ok(Some(GroupIsomorphism { map }))
    } else {
        Ok(None)
    }
}

/// True iff the measure's support is a subgroup and the weights are constant
/// on it (the degenerate case for cube derivation).
pub fn is_uniform_on_subgroup(g: &CayleyTable, m: &Measure) -> Result<bool, GroupError> {
    if m.len() != g.n() {
        return Err(GroupError::MeasureLengthMismatch {
            n: g.n(),
            len: m.len(),
        });
    }
    let support = m.support();
    if support.is_empty() {
        return Ok(false);
    }
    let w = m.weight(support[0]);
    if support.iter().any(|&k| m.weight(k) != w) {
        return Ok(false);
    }
    let closed = support
        .iter()
        .all(|&a| support.iter().all(|&b| support.binary_search(&g.mul(a, b)).is_ok()));
    Ok(closed)
}

pub fn cyclic(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |i, j| (i + j) % n).expect("cyclic group")
}

/// Direct product on pairs ordered as `a_index * b.n() + b_index`.
pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
    let (na, nb) = (a.n(), b.n());
    CayleyTable::from_fn(na * nb, |i, j| {
        let (ia, ib) = (i / nb, i % nb);
        let (ja, jb) = (j / nb, j % nb);
        a.mul(ia, ja) * nb + b.mul(ib, jb)
    })
    .expect("direct product")
}

/// Dihedral group of order `2m`: rotations `r^k` at indices `0..m`,
/// reflections `s r^k` at indices `m..2m`.
pub fn dihedral(m: usize) -> CayleyTable {
    assert!(m >= 1);
    CayleyTable::from_fn(2 * m, |i, j| {
        let (ri, fi) = (i % m, i >= m);
        let (rj, fj) = (j % m, j >= m);
        // r^a r^b = r^{a+b}; r^a (s r^b) = s r^{b-a}; (s r^a) r^b = s r^{a+b};
        // (s r^a)(s r^b) = r^{b-a}
        match (fi, fj) {
            (false, false) => (ri + rj) % m,
            (false, true) => m + (rj + m - ri) % m,
            (true, false) => m + (ri + rj) % m,
            (true, true) => (rj + m - ri) % m,
        }
    })
    .expect("dihedral group")
}

/// Symmetric group on 3 letters, elements as the 6 permutations of (0,1,2)
/// in lexicographic order, identity first. Product is composition,
/// `(p * q)(x) = p(q(x))`.
pub fn symmetric3() -> CayleyTable {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    CayleyTable::from_fn(6, |i, j| {
        let composed = [
            perms[i][perms[j][0]],
            perms[i][perms[j][1]],
            perms[i][perms[j][2]],
        ];
        perms.iter().position(|p| *p == composed).expect("closed")
    })
    .expect("symmetric group")
}

/// Quaternion group, elements ordered 1, i, j, k, -1, -i, -j, -k.
pub fn quaternion8() -> CayleyTable {
    // encode x as (sign, axis) with axes 1,i,j,k
    let dec = |x: usize| (x / 4, x % 4);
    let enc = |s: usize, a: usize| (s % 2) * 4 + a;
    let base = |a: usize, b: usize| -> (usize, usize) {
        // product of unit axes, returning (sign, axis)
        match (a, b) {
            (0, x) => (0, x),
            (x, 0) => (0, x),
            (1, 1) | (2, 2) | (3, 3) => (1, 0),
            (1, 2) => (0, 3),
            (2, 1) => (1, 3),
            (2, 3) => (0, 1),
            (3, 2) => (1, 1),
            (3, 1) => (0, 2),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    CayleyTable::from_fn(8, |x, y| {
        let (sx, ax) = dec(x);
        let (sy, ay) = dec(y);
        let (sp, ap) = base(ax, ay);
        enc(sx + sy + sp, ap)
    })
    .expect("quaternion group")
}

/// All isomorphism classes of groups of the given order (1 through 8),
/// paired with canonical names.
pub fn catalog(order: usize) -> Result<Vec<(String, CayleyTable)>, GroupError> {
    let named = |name: &str, g: CayleyTable| (name.to_string(), g);
    Ok(match order {
        1 => vec![named("Z1", cyclic(1))],
        2 => vec![named("Z2", cyclic(2))],
        3 => vec![named("Z3", cyclic(3))],
        4 => vec![
            named("Z4", cyclic(4)),
            named("Z2xZ2", direct_product(&cyclic(2), &cyclic(2))),
        ],
        5 => vec![named("Z5", cyclic(5))],
        6 => vec![named("Z6", cyclic(6)), named("S3", symmetric3())],
        7 => vec![named("Z7", cyclic(7))],
        8 => vec![
            named("Z8", cyclic(8)),
            named("Z2xZ4", direct_product(&cyclic(2), &cyclic(4))),
            named(
                "Z2xZ2xZ2",
                direct_product(&cyclic(2), &direct_product(&cyclic(2), &cyclic(2))),
            ),
            named("D4", dihedral(4)),
            named("Q8", quaternion8()),
        ],
        _ => return Err(GroupError::UnsupportedOrder(order)),
    })
}

/// The names `catalog` uses, in catalog order.
pub fn catalog_names(order: usize) -> Result<Vec<String>, GroupError> {
    Ok(catalog(order)?.into_iter().map(|(name, _)| name).collect())
}

/// Looks up a group by name: `S3`, `D4`, `Q8`, or products of cyclic groups
/// written `Z4`, `Z2xZ2`, `Z2xZ2xZ2`, ...
pub fn by_name(name: &str) -> Result<CayleyTable, GroupError> {
    match name {
        "S3" => return Ok(symmetric3()),
        "D4" => return Ok(dihedral(4)),
        "Q8" => return Ok(quaternion8()),
        _ => {}
    }
    let mut factors = Vec::new();
    for part in name.split('x') {
        let rest = part
            .strip_prefix('Z')
            .ok_or_else(|| GroupError::UnknownName(name.to_string()))?;
        let k: usize = rest
            .parse()
            .map_err(|_| GroupError::UnknownName(name.to_string()))?;
        if k == 0 {
            return Err(GroupError::UnknownName(name.to_string()));
        }
        factors.push(k);
    }
    if factors.is_empty() {
        return Err(GroupError::UnknownName(name.to_string()));
    }
    let mut g = cyclic(factors[0]);
    for &k in &factors[1..] {
        g = direct_product(&g, &cyclic(k));
    }
    Ok(g)
}
