use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::{LaurentMatrix, LaurentPoly};
use crate::error::{check_rank, Error, Result};

/// A finite based free chain complex over `Z[Z^r]`.
///
/// The differential in degree `n` is a `dim(n) x dim(n-1)` matrix acting by right
/// multiplication. Degrees may be negative; only nonzero modules are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedChainComplex {
    rank: usize,
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, LaurentMatrix>,
}

impl BasedChainComplex {
    /// Builds and validates a complex (shapes and `d∘d = 0`).
    pub fn new(
        rank: usize,
        dims: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, LaurentMatrix>,
    ) -> Result<Self> {
        let c = Self::from_parts_unchecked(rank, dims, diffs);
        let problems = c.validate();
        if problems.is_empty() {
            Ok(c)
        } else {
            Err(Error::NotAChainComplex(problems.join("; ")))
        }
    }

    /// Stores the data without checking `d∘d = 0`; see [`validate`](Self::validate).
    pub fn from_parts_unchecked(
        rank: usize,
        dims: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, LaurentMatrix>,
    ) -> Self {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let diffs = diffs
            .into_iter()
            .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
            .collect();
        BasedChainComplex { rank, dims, diffs }
    }

    /// The zero complex.
    pub fn zero(rank: usize) -> Self {
        BasedChainComplex {
            rank,
            dims: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// `el(p)`: the one-by-one differential `p` from degree `degree` to `degree - 1`.
    pub fn elementary(p: LaurentPoly, degree: i64) -> Self {
        let rank = p.rank();
        let dims = BTreeMap::from([(degree, 1), (degree - 1, 1)]);
        let diffs = BTreeMap::from([(degree, LaurentMatrix::scalar(p))]);
        Self::from_parts_unchecked(rank, dims, diffs)
    }

    /// `el(A)` for a square matrix `A` from degree `degree` to `degree - 1`.
    pub fn elementary_matrix(a: LaurentMatrix, degree: i64) -> Result<Self> {
        let (r, c) = a.shape();
        if r != c {
            return Err(Error::Shape(format!("el() needs a square matrix, got {r}x{c}")));
        }
        let rank = a.rank_of_ring();
        Self::new(
            rank,
            BTreeMap::from([(degree, r), (degree - 1, r)]),
            BTreeMap::from([(degree, a)]),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Degrees carrying a nonzero module, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    /// Differential `C_n -> C_{n-1}`; zero when not stored.
    pub fn differential(&self, n: i64) -> LaurentMatrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| LaurentMatrix::zeros(self.rank, self.dim(n), self.dim(n - 1)))
    }

    /// Every shape problem and nonvanishing composite, as readable diagnostics.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for (&n, m) in &self.diffs {
            if m.rank_of_ring() != self.rank {
                problems.push(format!("differential {n} is over a ring of the wrong rank"));
            }
            if m.shape() != (self.dim(n), self.dim(n - 1)) {
                problems.push(format!(
                    "differential {n} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.dim(n),
                    self.dim(n - 1)
                ));
            }
        }
        if !problems.is_empty() {
            return problems;
        }
        for &n in self.diffs.keys() {
            if self.diffs.contains_key(&(n - 1)) {
                let comp = &self.diffs[&n] * &self.diffs[&(n - 1)];
                if !comp.is_zero() {
                    problems.push(format!("d_{} ∘ d_{n} is not zero", n - 1));
                }
            }
        }
        problems
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `Δ_n = c_{n+1} c*_{n+1} + c*_n c_n`, as the matrix `D_{n+1}^* D_{n+1} + D_n D_n^*`.
    pub fn laplacian(&self, n: i64) -> LaurentMatrix {
        let up = self.differential(n + 1);
        let down = self.differential(n);
        &(&up.star() * &up) + &(&down * &down.star())
    }

    /// Exactness over the fraction field: `rk d_n + rk d_{n+1} = dim C_n` everywhere.
    pub fn is_l2_acyclic(&self) -> Result<bool> {
        Ok(self.acyclicity_defects()?.is_empty())
    }

    /// Degrees where exactness fails, with the rational Betti number there.
    pub fn acyclicity_defects(&self) -> Result<Vec<(i64, usize)>> {
        let mut ranks = BTreeMap::new();
        for (&n, m) in &self.diffs {
            ranks.insert(n, m.field_rank()?);
        }
        let r = |n: i64| ranks.get(&n).copied().unwrap_or(0);
        Ok(self
            .degrees()
            .filter_map(|n| {
                let used = r(n) + r(n + 1);
                (used != self.dim(n)).then(|| (n, self.dim(n) - used.min(self.dim(n))))
            })
            .collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let mut dims = self.dims.clone();
        for (&n, &d) in &other.dims {
            *dims.entry(n).or_insert(0) += d;
        }
        let degrees: Vec<i64> = dims.keys().copied().collect();
        let mut diffs = BTreeMap::new();
        for n in degrees {
            let m = LaurentMatrix::block_diag(&self.differential(n), &other.differential(n));
            if !m.is_zero() {
                diffs.insert(n, m);
            }
        }
        Ok(Self::from_parts_unchecked(self.rank, dims, diffs))
    }

    /// `(ΣC)_n = C_{n-1}` with differential `-c_{n-1}`.
    pub fn suspension(&self) -> Self {
        BasedChainComplex {
            rank: self.rank,
            dims: self.dims.iter().map(|(&n, &d)| (n + 1, d)).collect(),
            diffs: self.diffs.iter().map(|(&n, m)| (n + 1, m.neg())).collect(),
        }
    }

    /// Shift so that degree `n` becomes degree `n + by`, keeping the differentials.
    pub fn shift_degrees(&self, by: i64) -> Self {
        BasedChainComplex {
            rank: self.rank,
            dims: self.dims.iter().map(|(&n, &d)| (n + by, d)).collect(),
            diffs: self.diffs.iter().map(|(&n, m)| (n + by, m.clone())).collect(),
        }
    }

    /// Replaces the basis of `C_n` by `P·b`, for `P` invertible over `Z[Z^r]`
    /// with inverse `p_inv`: `d_n ↦ P d_n`, `d_{n+1} ↦ d_{n+1} P⁻¹`.
    pub fn change_basis(&self, n: i64, p: &LaurentMatrix, p_inv: &LaurentMatrix) -> Result<Self> {
        let d = self.dim(n);
        if p.shape() != (d, d) || p_inv.shape() != (d, d) {
            return Err(Error::Shape(format!("basis change in degree {n} must be {d}x{d}")));
        }
        let mut out = self.clone();
        let down = p.try_mul(&self.differential(n))?;
        let up = self.differential(n + 1).try_mul(p_inv)?;
        for (deg, m) in [(n, down), (n + 1, up)] {
            if m.rows() > 0 && m.cols() > 0 {
                out.diffs.insert(deg, m);
            }
        }
        Ok(out)
    }

    /// JSON form `{"degrees": {"n": dim}, "differentials": {"n": rows}, "rank": r}`.
    pub fn to_json(&self) -> Value {
        let mut degrees = Map::new();
        for (n, d) in &self.dims {
            degrees.insert(n.to_string(), json!(d));
        }
        let mut diffs = Map::new();
        for (n, m) in &self.diffs {
            diffs.insert(n.to_string(), m.to_json());
        }
        json!({ "degrees": degrees, "differentials": diffs, "rank": self.rank })
    }

    /// Parses the JSON form; the result is validated.
    pub fn from_json(v: &Value) -> Result<Self> {
        let c = Self::from_json_unchecked(v)?;
        let problems = c.validate();
        if problems.is_empty() {
            Ok(c)
        } else {
            Err(Error::NotAChainComplex(problems.join("; ")))
        }
    }

    pub fn from_json_unchecked(v: &Value) -> Result<Self> {
        let rank = v
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("complex needs an integer \"rank\"".into()))?
            as usize;
        let degrees = v
            .get("degrees")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Json("complex needs a \"degrees\" object".into()))?;
        let mut dims = BTreeMap::new();
        for (k, d) in degrees {
            let n: i64 = k
                .parse()
                .map_err(|_| Error::Json(format!("degree key {k:?} is not an integer")))?;
            let d = d
                .as_u64()
                .ok_or_else(|| Error::Json(format!("dimension of degree {n} is not a count")))?;
            dims.insert(n, d as usize);
        }
        let mut diffs = BTreeMap::new();
        if let Some(obj) = v.get("differentials") {
            let obj = obj
                .as_object()
                .ok_or_else(|| Error::Json("\"differentials\" must be an object".into()))?;
            for (k, m) in obj {
                let n: i64 = k
                    .parse()
                    .map_err(|_| Error::Json(format!("degree key {k:?} is not an integer")))?;
                let rows = dims.get(&n).copied().unwrap_or(0);
                let cols = dims.get(&(n - 1)).copied().unwrap_or(0);
                diffs.insert(n, LaurentMatrix::from_json(rank, rows, cols, m)?);
            }
        }
        Ok(Self::from_parts_unchecked(rank, dims, diffs))
    }
}

/// A chain map `f: C -> D`, with `f_n` a `dim C_n x dim D_n` matrix.
#[derive(Debug, Clone)]
pub struct ChainMap {
    source: BasedChainComplex,
    target: BasedChainComplex,
    maps: BTreeMap<i64, LaurentMatrix>,
}

impl ChainMap {
    /// Checks shapes and `c_n f_{n-1} = f_n d_n`.
    pub fn new(
        source: BasedChainComplex,
        target: BasedChainComplex,
        maps: BTreeMap<i64, LaurentMatrix>,
    ) -> Result<Self> {
        check_rank(source.rank, target.rank)?;
        let f = ChainMap {
            source,
            target,
            maps,
        };
        for (&n, m) in &f.maps {
            if m.shape() != (f.source.dim(n), f.target.dim(n)) {
                return Err(Error::NotAChainMap(format!(
                    "component {n} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    f.source.dim(n),
                    f.target.dim(n)
                )));
            }
        }
        let lo = f.source.min_degree().into_iter().chain(f.target.min_degree()).min();
        let hi = f.source.max_degree().into_iter().chain(f.target.max_degree()).max();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            for n in lo..=hi + 1 {
                let lhs = f.source.differential(n).try_mul(&f.component(n - 1))?;
                let rhs = f.component(n).try_mul(&f.target.differential(n))?;
                if lhs != rhs {
                    return Err(Error::NotAChainMap(format!(
                        "square in degree {n} does not commute"
                    )));
                }
            }
        }
        Ok(f)
    }

    /// The identity chain map of `c`.
    pub fn identity(c: &BasedChainComplex) -> Self {
        let maps = c
            .degrees()
            .map(|n| (n, LaurentMatrix::identity(c.rank, c.dim(n))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    /// `f = d∘h + h∘c`, null-homotopic for any `h_n: C_n -> D_{n+1}`.
    pub fn null_homotopic(
        source: BasedChainComplex,
        target: BasedChainComplex,
        homotopy: &BTreeMap<i64, LaurentMatrix>,
    ) -> Result<Self> {
        check_rank(source.rank, target.rank)?;
        let h = |n: i64| {
            homotopy.get(&n).cloned().unwrap_or_else(|| {
                LaurentMatrix::zeros(source.rank, source.dim(n), target.dim(n + 1))
            })
        };
        let mut maps = BTreeMap::new();
        for n in source.degrees().collect::<Vec<_>>() {
            let a = source.differential(n).try_mul(&h(n - 1))?;
            let b = h(n).try_mul(&target.differential(n + 1))?;
            maps.insert(n, a.try_add(&b)?);
        }
        Self::new(source, target, maps)
    }

    pub fn source(&self) -> &BasedChainComplex {
        &self.source
    }

    pub fn target(&self) -> &BasedChainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> LaurentMatrix {
        self.maps.get(&n).cloned().unwrap_or_else(|| {
            LaurentMatrix::zeros(self.source.rank, self.source.dim(n), self.target.dim(n))
        })
    }

    /// `cone(f)_n = C_{n-1} ⊕ D_n` with differential `[[-c, f], [0, d]]`.
    pub fn cone(&self) -> BasedChainComplex {
        let (c, d) = (&self.source, &self.target);
        let rank = c.rank;
        let mut dims = BTreeMap::new();
        for n in c.degrees() {
            *dims.entry(n + 1).or_insert(0) += c.dim(n);
        }
        for n in d.degrees() {
            *dims.entry(n).or_insert(0) += d.dim(n);
        }
        let cone_dim = |n: i64| c.dim(n - 1) + d.dim(n);
        let mut diffs = BTreeMap::new();
        for &n in dims.keys() {
            let mut m = LaurentMatrix::zeros(rank, cone_dim(n), cone_dim(n - 1));
            m.put_block(0, 0, &c.differential(n - 1).neg());
            m.put_block(0, c.dim(n - 2), &self.component(n - 1));
            m.put_block(c.dim(n - 1), c.dim(n - 2), &d.differential(n));
            if !m.is_zero() {
                diffs.insert(n, m);
            }
        }
        BasedChainComplex::from_parts_unchecked(rank, dims, diffs)
    }
}
