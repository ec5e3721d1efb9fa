//! Exact integer linear algebra: Smith normal form, lattice membership and
//! invariants of finitely presented abelian groups.
//!
//! All arithmetic is checked; overflow surfaces as [`Error::Overflow`]
//! instead of a wrong answer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Malformed(format!("matrix row {i} has length {} but {cols} columns expected", r.len())));
            }
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Malformed(format!("matrix shapes {}x{} and {}x{} do not compose", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add(out.get(i, j), mul(a, other.get(k, j))?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[i64]) -> Result<Vec<i64>> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![0i64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = add(*o, mul(a, self.get(i, j))?)?;
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let v = add(self.get(dst, j), mul(k, self.get(src, j))?)?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let v = add(self.get(i, dst), mul(k, self.get(i, src))?)?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = self.get(i, j);
            self.set(i, j, -v);
        }
    }
}

/// Smith normal form `D = U A V` of a relation matrix, keeping the right
/// transform `V` so that elements of `Z^n / rowspace(A)` can be put in
/// canonical form.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<i64>,
    /// Right transform, `cols x cols`, unimodular.
    pub right: IntMatrix,
    pub cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn invariants(&self) -> AbGroupInvariants {
        AbGroupInvariants { torsion: self.diagonal.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect(), free_rank: self.cols - self.diagonal.len() }
    }

    /// Canonical representative of the class of `v` in `Z^n / L`.
    pub fn canonical(&self, v: &[i64]) -> Result<Vec<i64>> {
        let mut w = self.right.apply_row(v)?;
        for (i, &d) in self.diagonal.iter().enumerate() {
            w[i] = w[i].rem_euclid(d);
        }
        Ok(w)
    }

    /// True iff `v` lies in the relation lattice.
    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        Ok(self.canonical(v)?.iter().all(|&x| x == 0))
    }

    /// Order of the finite group, or `None` when the free rank is positive.
    pub fn order(&self) -> Option<u128> {
        if self.diagonal.len() < self.cols {
            return None;
        }
        Some(self.diagonal.iter().map(|&d| d as u128).product())
    }
}

/// Computes the Smith normal form of `a` (rows are relations).
pub fn smith(a: &IntMatrix) -> Result<Smith> {
    let mut a = a.clone();
    let (m, n) = (a.rows, a.cols);
    let mut v = IntMatrix::identity(n);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize, i64)> = None;
        for i in t..m {
            for j in t..n {
                let x = a.get(i, j).abs();
                if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                    best = Some((i, j, x));
                    if x == 1 {
                        break;
                    }
                }
            }
            if best.is_some_and(|(_, _, b)| b == 1) {
                break;
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = a.get(t, t);
            let mut dirty = false;
            for i in t + 1..m {
                let x = a.get(i, t);
                if x != 0 {
                    a.add_row(i, t, -(x / p))?;
                    if a.get(i, t) != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                let x = a.get(t, j);
                if x != 0 {
                    let q = -(x / p);
                    a.add_col(j, t, q)?;
                    v.add_col(j, t, q)?;
                    if a.get(t, j) != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest leftover in row/column t onto the pivot
                let mut best = (t, t, a.get(t, t).abs());
                for i in t + 1..m {
                    let x = a.get(i, t).abs();
                    if x != 0 && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..n {
                    let x = a.get(t, j).abs();
                    if x != 0 && x < best.2 {
                        best = (t, j, x);
                    }
                }
                a.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // divisibility condition on the trailing block
            let mut fix = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if a.get(i, j) % p != 0 {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => a.add_row(t, i, 1)?,
                None => break,
            }
        }
        if a.get(t, t) < 0 {
            a.negate_row(t);
        }
        diagonal.push(a.get(t, t));
        t += 1;
    }
    Ok(Smith { diagonal, right: v, cols: n })
}

/// Invariant factors and free rank of a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct AbGroupInvariants {
    /// Invariant factors, each > 1, in divisibility order.
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl AbGroupInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroupInvariants { torsion: vec![], free_rank: rank }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Order when finite.
    pub fn order(&self) -> Option<u128> {
        (self.free_rank == 0).then(|| self.torsion.iter().map(|&d| d as u128).product())
    }

    /// Builds invariants from an arbitrary list of cyclic orders
    /// (`0` meaning infinite cyclic), normalizing to divisibility form.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let free_rank = orders.iter().filter(|&&d| d == 0).count();
        let mut prime_powers: Vec<(u64, u64)> = Vec::new();
        for &d in orders.iter().filter(|&&d| d > 1) {
            let mut d = d;
            let mut p = 2;
            while p * p <= d {
                if d % p == 0 {
                    let mut q = 1;
                    while d % p == 0 {
                        d /= p;
                        q *= p;
                    }
                    prime_powers.push((p, q));
                }
                p += 1;
            }
            if d > 1 {
                prime_powers.push((d, d));
            }
        }
        // group by prime, largest powers combine into the largest factor
        prime_powers.sort();
        let mut by_prime: Vec<Vec<u64>> = Vec::new();
        let mut last = 0;
        for (p, q) in prime_powers {
            if p != last {
                by_prime.push(Vec::new());
                last = p;
            }
            by_prime.last_mut().unwrap().push(q);
        }
        let len = by_prime.iter().map(|v| v.len()).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for powers in by_prime {
            // powers ascending; align to the end
            let off = len - powers.len();
            for (k, q) in powers.into_iter().enumerate() {
                torsion[off + k] *= q;
            }
        }
        AbGroupInvariants { torsion, free_rank }
    }
}

impl fmt::Display for AbGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An abelian group given by `gens` generators and integer relation rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct AbPres {
    pub gens: usize,
    pub rels: Vec<Vec<i64>>,
}

impl AbPres {
    pub fn zero() -> Self {
        AbPres { gens: 0, rels: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        AbPres { gens: rank, rels: vec![] }
    }

    /// Cyclic group of order `n` (`n = 0` gives Z).
    pub fn cyclic(n: i64) -> Self {
        if n == 0 {
            Self::free(1)
        } else {
            AbPres { gens: 1, rels: vec![vec![n]] }
        }
    }

    pub fn matrix(&self) -> Result<IntMatrix> {
        IntMatrix::from_rows(self.gens, &self.rels)
    }

    pub fn smith(&self) -> Result<Smith> {
        smith(&self.matrix()?)
    }

    pub fn invariants(&self) -> Result<AbGroupInvariants> {
        Ok(self.smith()?.invariants())
    }

    /// All elements of a finite group as canonical coordinate vectors on the
    /// original generators. Errors when the group is infinite or larger than
    /// `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Vec<i64>>> {
        let s = self.smith()?;
        let order = s.order().ok_or_else(|| Error::TooLarge("infinite abelian group".into()))?;
        if order > cap as u128 {
            return Err(Error::TooLarge(format!("abelian group of order {order}")));
        }
        // V is unimodular; columns of V^{-1} give generator coordinates of
        // the Smith basis vectors. Enumerate via the Smith basis and map back.
        let vinv = unimodular_inverse(&s.right)?;
        let mut out = Vec::with_capacity(order as usize);
        let dims: Vec<i64> = s.diagonal.clone();
        let mut idx = vec![0i64; dims.len()];
        loop {
            // smith coordinates (idx, 0...) -> generator coords = w * V^{-1}
            let mut w = vec![0i64; self.gens];
            w[..idx.len()].copy_from_slice(&idx);
            out.push(vinv.apply_row(&w)?);
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(out);
                }
                idx[k] += 1;
                if idx[k] < dims[k] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

/// Inverse of a unimodular matrix by Gaussian elimination over Z.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = IntMatrix::identity(n);
    for c in 0..n {
        // Euclid on column c among rows >= c
        loop {
            let mut piv = None;
            for r in c..n {
                let x = a.get(r, c).abs();
                if x != 0 && piv.is_none_or(|(_, b)| x < b) {
                    piv = Some((r, x));
                }
            }
            let (pr, _) = piv.ok_or_else(|| Error::Invalid("matrix is singular".into()))?;
            a.swap_rows(c, pr);
            inv.swap_rows(c, pr);
            let p = a.get(c, c);
            let mut clean = true;
            for r in c + 1..n {
                let q = a.get(r, c) / p;
                if q != 0 {
                    a.add_row(r, c, -q)?;
                    inv.add_row(r, c, -q)?;
                }
                if a.get(r, c) != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a.get(c, c).abs() != 1 {
            return Err(Error::Invalid("matrix is not unimodular".into()));
        }
        if a.get(c, c) == -1 {
            a.negate_row(c);
            inv.negate_row(c);
        }
    }
    for c in (0..n).rev() {
        for r in 0..c {
            let q = a.get(r, c);
            if q != 0 {
                a.add_row(r, c, -q)?;
                inv.add_row(r, c, -q)?;
            }
        }
    }
    Ok(inv)
}

/// Row-style Hermite normal form (echelon, positive pivots, reduced above).
/// Returns only the nonzero rows.
pub fn hermite_rows(a: &IntMatrix) -> Result<IntMatrix> {
    let mut a = a.clone();
    let (m, n) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // gcd-combine column c into row r using extended Euclid pairs
        for i in r + 1..m {
            let (x, y) = (a.get(r, c), a.get(i, c));
            if y == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(x, y);
            let (xg, yg) = (x / g, y / g);
            // [r; i] <- [[s, t], [-yg, xg]] [r; i]
            for j in 0..n {
                let (ar, ai) = (a.get(r, j), a.get(i, j));
                a.set(r, j, add(mul(s, ar)?, mul(t, ai)?)?);
                a.set(i, j, add(mul(-yg, ar)?, mul(xg, ai)?)?);
            }
        }
        if a.get(r, c) == 0 {
            continue;
        }
        if a.get(r, c) < 0 {
            a.negate_row(r);
        }
        let p = a.get(r, c);
        for i in 0..r {
            let q = a.get(i, c).div_euclid(p);
            a.add_row(i, r, -q)?;
        }
        r += 1;
    }
    let mut out = IntMatrix::zeros(r, n);
    out.data.copy_from_slice(&a.data[..r * n]);
    Ok(out)
}

/// Extended gcd: returns `(g, s, t)` with `s*x + t*y = g >= 0`.
pub fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (x, y);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Invariants computed by alternating row and column Hermite reductions
/// until the matrix is diagonal, then normalizing the diagonal. Shares no
/// elimination code with [`smith`] and serves as an independent check.
pub fn invariants_by_hermite(a: &IntMatrix) -> Result<AbGroupInvariants> {
    let n = a.cols;
    let mut cur = hermite_rows(a)?;
    loop {
        let is_diag = (0..cur.rows).all(|i| (0..cur.cols).all(|j| i == j || cur.get(i, j) == 0));
        if is_diag {
            break;
        }
        let t = hermite_rows(&cur.transpose())?;
        cur = hermite_rows(&t.transpose())?;
    }
    let diag: Vec<u64> = (0..cur.rows.min(cur.cols)).map(|i| cur.get(i, i).unsigned_abs()).filter(|&d| d != 0).collect();
    let rank = diag.len();
    let mut orders: Vec<u64> = diag;
    orders.extend(std::iter::repeat_n(0, n - rank));
    Ok(AbGroupInvariants::from_cyclic_orders(&orders))
}

/// Invariants of `Z^nvars / <rows>` for sparse rows of `(variable, coef)`.
/// Variables with a unit coefficient are eliminated first; the remainder
/// goes through [`smith`].
pub fn sparse_invariants(nvars: usize, rows: Vec<Vec<(usize, i64)>>) -> Result<AbGroupInvariants> {
    let (vars, rest) = eliminate_units(nvars, rows)?;
    let dense: Vec<Vec<i64>> = rest
        .iter()
        .map(|r| {
            let mut v = vec![0i64; vars.len()];
            for (&k, &c) in r {
                v[vars.binary_search(&k).unwrap()] = c;
            }
            v
        })
        .collect();
    Ok(smith(&IntMatrix::from_rows(vars.len(), &dense)?)?.invariants())
}

/// Unit-pivot elimination. Returns the surviving variables (sorted) and the
/// remaining nonzero rows over them.
pub fn eliminate_units(nvars: usize, rows: Vec<Vec<(usize, i64)>>) -> Result<(Vec<usize>, Vec<BTreeMap<usize, i64>>)> {
    let mut rows: Vec<BTreeMap<usize, i64>> = rows
        .into_iter()
        .map(|r| {
            let mut m = BTreeMap::new();
            for (v, c) in r {
                let e = m.entry(v).or_insert(0i64);
                *e = e.checked_add(c).ok_or(Error::Overflow)?;
            }
            m.retain(|_, c| *c != 0);
            Ok(m)
        })
        .collect::<Result<_>>()?;
    let mut col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nvars];
    for (i, r) in rows.iter().enumerate() {
        for &v in r.keys() {
            col[v].insert(i);
        }
    }
    let mut alive: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut eliminated = vec![false; nvars];
    loop {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            for (&v, &c) in r {
                if c.abs() == 1 {
                    let key = (r.len(), col[v].len(), i, v);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, _, i, v)) = best else { break };
        let pivot = std::mem::take(&mut rows[i]);
        alive[i] = false;
        for &w in pivot.keys() {
            col[w].remove(&i);
        }
        let p = pivot[&v];
        let users: Vec<usize> = col[v].iter().copied().collect();
        for r in users {
            let c = rows[r][&v];
            let factor = c.checked_mul(-p).ok_or(Error::Overflow)?;
            for (&w, &cw) in &pivot {
                let cur = rows[r].get(&w).copied().unwrap_or(0);
                let new = cw.checked_mul(factor).and_then(|x| x.checked_add(cur)).ok_or(Error::Overflow)?;
                if new == 0 {
                    rows[r].remove(&w);
                    col[w].remove(&r);
                } else {
                    rows[r].insert(w, new);
                    col[w].insert(r);
                }
            }
            if rows[r].is_empty() {
                alive[r] = false;
            }
        }
        eliminated[v] = true;
    }
    let vars: Vec<usize> = (0..nvars).filter(|&v| !eliminated[v]).collect();
    let rest = rows.into_iter().zip(alive).filter(|(r, a)| *a && !r.is_empty()).map(|(r, _)| r).collect();
    Ok((vars, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inv(cols: usize, rows: &[Vec<i64>]) -> AbGroupInvariants {
        smith(&IntMatrix::from_rows(cols, rows).unwrap()).unwrap().invariants()
    }

    #[test]
    fn small_cases() {
        assert_eq!(inv(2, &[vec![2, 0], vec![0, 2]]), AbGroupInvariants { torsion: vec![2, 2], free_rank: 0 });
        assert_eq!(inv(2, &[vec![2, 0], vec![0, 3]]), AbGroupInvariants { torsion: vec![6], free_rank: 0 });
        assert_eq!(inv(1, &[]), AbGroupInvariants::free(1));
        assert_eq!(inv(3, &[vec![1, 1, 0]]), AbGroupInvariants::free(2));
        assert_eq!(inv(2, &[vec![4, 6], vec![6, 4]]), AbGroupInvariants { torsion: vec![2, 10], free_rank: 0 });
    }

    #[test]
    fn cyclic_orders_normalize() {
        let a = AbGroupInvariants::from_cyclic_orders(&[2, 3, 0, 4]);
        assert_eq!(a, AbGroupInvariants { torsion: vec![2, 12], free_rank: 1 });
    }

    #[test]
    fn elements_enumerate_finite_group() {
        let p = AbPres { gens: 2, rels: vec![vec![2, 0], vec![0, 3]] };
        let els = p.elements(100).unwrap();
        assert_eq!(els.len(), 6);
        let s = p.smith().unwrap();
        let mut canon: Vec<_> = els.iter().map(|e| s.canonical(e).unwrap()).collect();
        canon.sort();
        canon.dedup();
        assert_eq!(canon.len(), 6);
    }

    #[test]
    fn membership() {
        let s = smith(&IntMatrix::from_rows(2, &[vec![2, 4], vec![0, 6]]).unwrap()).unwrap();
        assert!(s.contains(&[2, 10]).unwrap());
        assert!(!s.contains(&[1, 0]).unwrap());
        assert!(s.contains(&[0, 6]).unwrap());
        assert!(!s.contains(&[0, 2]).unwrap());
    }

    proptest! {
        #[test]
        fn sparse_elimination_matches_smith(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 0..7)) {
            let m = IntMatrix::from_rows(5, &rows).unwrap();
            let sparse: Vec<Vec<(usize, i64)>> = rows.iter().map(|r| r.iter().copied().enumerate().collect()).collect();
            prop_assert_eq!(sparse_invariants(5, sparse).unwrap(), smith(&m).unwrap().invariants());
        }

        #[test]
        fn smith_matches_hermite_route(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 4), 0..6)) {
            let m = IntMatrix::from_rows(4, &rows).unwrap();
            let a = smith(&m).unwrap().invariants();
            let b = invariants_by_hermite(&m).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn relation_rows_are_members(rows in prop::collection::vec(prop::collection::vec(-5i64..6, 3), 1..5)) {
            let m = IntMatrix::from_rows(3, &rows).unwrap();
            let s = smith(&m).unwrap();
            for r in &rows {
                prop_assert!(s.contains(r).unwrap());
            }
        }
    }
}
