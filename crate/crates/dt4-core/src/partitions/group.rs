use std::fmt;

use num_integer::Integer;

use super::solid::{Point, SolidPartition};
use crate::error::{Error, Result};
use crate::exactalg::monomial::LATTICE;
use crate::exactalg::{Monomial, T1, T2, T3, T4};

/// Finite abelian diagonal subgroup of SU(4): generator `a` of order
/// `orders[a]` acts on coordinate `i` by the character `weights[a][i] mod r_a`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupAction {
    name: String,
    orders: Vec<u32>,
    weights: Vec<[i32; 4]>,
}

/// Counts of boxes per colour, indexed by the mixed-radix colour index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ColorProfile(pub Vec<u32>);

impl ColorProfile {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl GroupAction {
    pub fn new(name: impl Into<String>, orders: Vec<u32>, weights: Vec<[i32; 4]>) -> Result<Self> {
        if orders.len() != weights.len() {
            return Err(Error::Invalid("one weight row per generator".into()));
        }
        if orders.iter().any(|&r| r == 0) {
            return Err(Error::Invalid("generator of order 0".into()));
        }
        for (r, w) in orders.iter().zip(&weights) {
            if w.iter().sum::<i32>().rem_euclid(*r as i32) != 0 {
                return Err(Error::NotSU4(format!("weights {w:?} mod {r}")));
            }
        }
        Ok(GroupAction { name: name.into(), orders, weights })
    }

    pub fn trivial() -> Self {
        GroupAction { name: "trivial".into(), orders: vec![], weights: vec![] }
    }

    pub fn zr(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::UnsupportedGroup("zr:0".into()));
        }
        Self::new(format!("zr:{r}"), vec![r], vec![[1, -1, 0, 0]])
    }

    /// Rows ordered so that colour index `a + 2b` is `R_ab`, with
    /// `x1 -> R_10`, `x2 -> R_01`, `x3 -> R_11`.
    pub fn z2z2() -> Self {
        Self::new("z2z2", vec![2, 2], vec![[1, 0, 1, 0], [0, 1, 1, 0]]).expect("valid")
    }

    pub fn z3age2() -> Self {
        Self::new("z3age2", vec![3], vec![[1, 1, 1, 0]]).expect("valid")
    }

    /// `trivial`, `zr:R`, `z2z2`, `z3age2`, `custom:orders=r1,r2;W=a,b,c,d/e,f,g,h`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "trivial" => return Ok(Self::trivial()),
            "z2z2" => return Ok(Self::z2z2()),
            "z3age2" => return Ok(Self::z3age2()),
            _ => {}
        }
        if let Some(r) = spec.strip_prefix("zr:") {
            let r: u32 = r.parse().map_err(|_| Error::UnsupportedGroup(spec.into()))?;
            return Self::zr(r);
        }
        if let Some(rest) = spec.strip_prefix("custom:") {
            let mut orders = None;
            let mut weights = None;
            for field in rest.split(';') {
                let (k, v) = field.split_once('=').ok_or_else(|| Error::UnsupportedGroup(spec.into()))?;
                match k.trim() {
                    "orders" => {
                        orders = Some(
                            v.split(',')
                                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::UnsupportedGroup(spec.into())))
                                .collect::<Result<Vec<_>>>()?,
                        )
                    }
                    "W" => {
                        let mut rows = Vec::new();
                        for row in v.split('/') {
                            let r: Vec<i32> = row
                                .split(',')
                                .map(|x| x.trim().parse::<i32>().map_err(|_| Error::UnsupportedGroup(spec.into())))
                                .collect::<Result<_>>()?;
                            if r.len() != 4 {
                                return Err(Error::UnsupportedGroup(spec.into()));
                            }
                            rows.push([r[0], r[1], r[2], r[3]]);
                        }
                        weights = Some(rows)
                    }
                    _ => return Err(Error::UnsupportedGroup(spec.into())),
                }
            }
            let (o, w) = orders.zip(weights).ok_or_else(|| Error::UnsupportedGroup(spec.into()))?;
            return Self::new(spec, o, w);
        }
        Err(Error::UnsupportedGroup(spec.into()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn weights(&self) -> &[[i32; 4]] {
        &self.weights
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(|&r| r == 1)
    }

    pub fn ncolors(&self) -> usize {
        self.orders.iter().map(|&r| r as usize).product()
    }

    fn index_of(&self, chars: impl Iterator<Item = i64>) -> usize {
        let mut idx = 0usize;
        let mut radix = 1usize;
        for (c, &r) in chars.zip(&self.orders) {
            idx += c.rem_euclid(r as i64) as usize * radix;
            radix *= r as usize;
        }
        idx
    }

    pub fn color_of_point(&self, p: &Point) -> usize {
        self.index_of(self.weights.iter().map(|w| (0..4).map(|i| w[i] as i64 * p[i] as i64).sum()))
    }

    /// Colour of an integral monomial in t1..t4 (y is G-trivial).
    pub fn color_of_monomial(&self, m: &Monomial) -> usize {
        let e = m.quarters();
        let slots = [T1, T2, T3, T4];
        self.index_of(
            self.weights.iter().map(|w| (0..4).map(|i| w[i] as i64 * (e[slots[i]] / LATTICE) as i64).sum()),
        )
    }

    pub fn is_invariant(&self, m: &Monomial) -> bool {
        self.color_of_monomial(m) == 0
    }

    /// Series variable names: one per colour.
    pub fn series_names(&self) -> Vec<String> {
        if self.name == "trivial" {
            return vec!["q".into()];
        }
        if self.name == "z2z2" {
            return ["q00", "q10", "q01", "q11"].iter().map(|s| s.to_string()).collect();
        }
        (0..self.ncolors()).map(|k| format!("q{k}")).collect()
    }

    /// All group elements as exponent tuples of a common order `L`:
    /// the element acts on coordinate `i` by `exp(2 pi i a_i / L)`.
    pub fn elements(&self) -> (u32, Vec<[u32; 4]>) {
        let l = self.orders.iter().fold(1u32, |acc, &r| acc.lcm(&r));
        let mut out = Vec::new();
        let n = self.ncolors();
        for idx in 0..n {
            let mut rem = idx;
            let mut a = [0i64; 4];
            for (r, w) in self.orders.iter().zip(&self.weights) {
                let k = (rem % *r as usize) as i64;
                rem /= *r as usize;
                for i in 0..4 {
                    a[i] += k * w[i] as i64 * (l / r) as i64;
                }
            }
            out.push(a.map(|x| x.rem_euclid(l as i64) as u32));
        }
        out.sort_unstable();
        out.dedup();
        (l, out)
    }
}

impl fmt::Display for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupAction({}, {:?}, {:?})", self.name, self.orders, self.weights)
    }
}

pub fn color_counts(p: &SolidPartition, action: &GroupAction) -> ColorProfile {
    let mut c = vec![0u32; action.ncolors()];
    for b in p.boxes() {
        c[action.color_of_point(b)] += 1;
    }
    ColorProfile(c)
}

/// `|pi|_{R0} + #{(a,a,a,d) in pi : a < d}`; without an action `|pi|_{R0} = |pi|`.
pub fn sign_exponent(p: &SolidPartition, action: Option<&GroupAction>) -> usize {
    let base = match action {
        None => p.len(),
        Some(g) => p.boxes().iter().filter(|b| g.color_of_point(b) == 0).count(),
    };
    base + p.diagonal_count()
}

/// Size-n partitions with the given colour profile, pruned on partial counts.
pub fn enumerate_colored(profile: &ColorProfile, action: &GroupAction) -> Vec<SolidPartition> {
    let n = profile.total() as usize;
    if profile.0.len() != action.ncolors() {
        return Vec::new();
    }
    let target = profile.0.clone();
    let g = action.clone();
    let prune = move |boxes: &[Point]| {
        let mut c = vec![0u32; g.ncolors()];
        for b in boxes {
            c[g.color_of_point(b)] += 1;
        }
        c.iter().zip(&target).all(|(x, t)| x <= t)
    };
    super::solid::PartitionStream::new(n, prune).filter(|p| color_counts(p, action) == *profile).collect()
}
