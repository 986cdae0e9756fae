//! Hopf algebras of finite groups.

use serde::{Deserialize, Serialize};

use super::{HopfError, HopfStarAlgebra, MultTable, StarAlgebra};
use crate::numlin::{CMatrix, CVector, ONE};

/// Multiplication table of a finite group; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    /// Validates closure, identity at index 0, associativity and inverses.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, HopfError> {
        let n = table.len();
        if n == 0 || labels.len() != n {
            return Err(HopfError::NotAGroup(format!("{} labels for {n} rows", labels.len())));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(HopfError::NotAGroup(format!("row {g} is not a map into {n} elements")));
            }
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(HopfError::NotAGroup("element 0 is not the identity".into()));
            }
            if !(0..n).any(|h| table[g][h] == 0 && table[h][g] == 0) {
                return Err(HopfError::NotAGroup(format!("element {g} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(HopfError::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(GroupTable { labels, table })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.table[g][h] == 0).expect("validated group")
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable { labels: (0..n).map(|a| a.to_string()).collect(), table }
    }

    /// Permutations of three letters in lexicographic one-line order, composed as maps.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|g| perms.iter().map(|h| index([g[h[0]], g[h[1]], g[h[2]]])).collect())
            .collect();
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        GroupTable { labels, table }
    }

    /// Direct product with pairs `(g, h)` at index `g * |H| + h`.
    pub fn direct_product(&self, other: &GroupTable) -> Self {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        let labels = (0..n * m)
            .map(|x| format!("({},{})", self.labels[x / m], other.labels[x % m]))
            .collect();
        GroupTable { labels, table }
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// A group isomorphism `self → other` as an index map, if one exists.
    pub fn isomorphism(&self, other: &GroupTable) -> Option<Vec<usize>> {
        let n = self.order();
        if n != other.order() {
            return None;
        }
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for g in 0..n {
            if !span.contains(&g) {
                gens.push(g);
                span = self.generated_subgroup(&gens);
            }
        }
        let cands: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| (0..n).filter(|&h| other.element_order(h) == self.element_order(g)).collect())
            .collect();
        let mut pick = vec![0usize; gens.len()];
        loop {
            if cands.iter().any(|c| c.is_empty()) {
                return None;
            }
            let imgs: Vec<usize> = pick.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
            if let Some(map) = self.extend_hom(&gens, &imgs, other) {
                return Some(map);
            }
            let mut k = 0;
            loop {
                if k == pick.len() {
                    return None;
                }
                pick[k] += 1;
                if pick[k] < cands[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }

    fn extend_hom(&self, gens: &[usize], imgs: &[usize], other: &GroupTable) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for (&s, &t) in gens.iter().zip(imgs) {
                let y = self.mul(x, s);
                let fy = other.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let mut seen = vec![false; n];
        for &m in &map {
            if m == usize::MAX || seen[m] {
                return None;
            }
            seen[m] = true;
        }
        Some(map)
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = vec![0usize];
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set.contains(&y) {
                    set.push(y);
                    frontier.push(y);
                }
            }
        }
        set.sort_unstable();
        set
    }
}

/// `ℂ[Γ]` with grouplike basis `λ_g`.
pub fn group_algebra(g: &GroupTable) -> HopfStarAlgebra {
    let n = g.order();
    let mult = MultTable::from_sparse(
        n,
        (0..n * n).map(|x| vec![(g.mul(x / n, x % n), ONE)]).collect(),
    );
    let mut star = CMatrix::zeros(n, n);
    let mut comult = CMatrix::zeros(n * n, n);
    for a in 0..n {
        star[(g.inv(a), a)] = ONE;
        comult[(a * n + a, a)] = ONE;
    }
    let mut unit = CVector::zeros(n);
    unit[0] = ONE;
    let labels = g.labels.iter().map(|l| format!("λ{l}")).collect();
    let algebra = StarAlgebra::new(labels, mult, unit, star.clone()).expect("consistent dims");
    HopfStarAlgebra::new("group_algebra", algebra, comult, CVector::from_element(n, ONE), star)
        .expect("consistent dims")
}

/// `C(Γ)` with basis of point masses `δ_g`.
pub fn function_algebra(g: &GroupTable) -> HopfStarAlgebra {
    let n = g.order();
    let mut comult = CMatrix::zeros(n * n, n);
    let mut antipode = CMatrix::zeros(n, n);
    for h in 0..n {
        antipode[(g.inv(h), h)] = ONE;
        for k in 0..n {
            comult[(h * n + k, g.mul(h, k))] = ONE;
        }
    }
    let mut counit = CVector::zeros(n);
    counit[0] = ONE;
    let labels = g.labels.iter().map(|l| format!("δ{l}")).collect();
    let algebra = StarAlgebra::functions_on_points(n).with_labels(labels);
    HopfStarAlgebra::new("function_algebra", algebra, comult, counit, antipode).expect("consistent dims")
}

/// The one-dimensional Hopf algebra `ℂ`.
pub fn trivial_hopf() -> HopfStarAlgebra {
    group_algebra(&GroupTable::cyclic(1)).with_name("trivial")
}

/// `C(Γ) → C(H)` restriction of functions to a subgroup, with `C(H)` built on
/// the listed elements in the given order.
pub fn restriction_to_subgroup(g: &GroupTable, subgroup: &[usize]) -> Result<(HopfStarAlgebra, CMatrix), HopfError> {
    let m = subgroup.len();
    if subgroup.first() != Some(&0) {
        return Err(HopfError::NotAGroup("subgroup must list the identity first".into()));
    }
    let pos = |x: usize| subgroup.iter().position(|&s| s == x);
    let mut table = vec![vec![0; m]; m];
    for (i, &a) in subgroup.iter().enumerate() {
        for (j, &b) in subgroup.iter().enumerate() {
            table[i][j] = pos(g.mul(a, b)).ok_or_else(|| HopfError::NotAGroup("subset not closed".into()))?;
        }
    }
    let labels = subgroup.iter().map(|&s| g.labels[s].clone()).collect();
    let h = GroupTable::new(labels, table)?;
    let mut pi = CMatrix::zeros(m, g.order());
    for (i, &s) in subgroup.iter().enumerate() {
        pi[(i, s)] = ONE;
    }
    Ok((function_algebra(&h), pi))
}
