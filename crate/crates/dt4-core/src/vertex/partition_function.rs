use std::collections::BTreeMap;
use std::path::Path;

use super::contribution::{contribution, Contribution, SignRule};
use crate::error::Result;
use crate::exactalg::series::sexp;
use crate::exactalg::{BracketFraction, Coeff, EvalPoint, Fp, SExp, TruncatedSeries};
use crate::parallel::Parallelism;
use crate::partitions::{partitions_up_to, GroupAction, SolidPartition};

/// `None` for the trivial group, so that it gets the single variable `q`.
pub fn effective_action(g: &GroupAction) -> Option<&GroupAction> {
    if g.is_trivial() {
        None
    } else {
        Some(g)
    }
}

pub fn series_nvars(action: Option<&GroupAction>) -> usize {
    action.map_or(1, |g| g.ncolors())
}

pub fn series_names(action: Option<&GroupAction>) -> Vec<String> {
    action.map_or_else(|| vec!["q".to_string()], |g| g.series_names())
}

/// All fixed-point contributions up to a total size, in canonical order
/// (by size, then lexicographically by box list).
#[derive(Clone, Debug)]
pub struct Contributions {
    pub action: Option<GroupAction>,
    pub order: u32,
    pub rule: SignRule,
    pub items: Vec<Contribution>,
}

pub fn collect_contributions(
    action: Option<&GroupAction>,
    order: u32,
    rule: &SignRule,
    par: Parallelism,
    cache_dir: Option<&Path>,
) -> Result<Contributions> {
    let parts: Vec<SolidPartition> = partitions_up_to(order as usize, cache_dir)?.into_iter().flatten().collect();
    let items = par.try_map(&parts, |p| contribution(p, action, rule))?;
    Ok(Contributions { action: action.cloned(), order, rule: *rule, items })
}

fn tree_sum<C: Coeff>(mut v: Vec<C>) -> C {
    if v.is_empty() {
        return C::zero();
    }
    while v.len() > 1 {
        let mut next = Vec::with_capacity(v.len().div_ceil(2));
        let mut it = v.chunks(2);
        for pair in &mut it {
            next.push(if pair.len() == 2 { pair[0].add(&pair[1]) } else { pair[0].clone() });
        }
        v = next;
    }
    v.pop().unwrap()
}

impl Contributions {
    pub fn nvars(&self) -> usize {
        series_nvars(self.action.as_ref())
    }

    pub fn names(&self) -> Vec<String> {
        series_names(self.action.as_ref())
    }

    pub fn exponent(&self, c: &Contribution) -> SExp {
        let v: Vec<i32> = c.profile.0.iter().map(|&x| x as i32).collect();
        sexp(&v)
    }

    /// Sum `conv(c)` per exponent; zero contributions are skipped and each
    /// bucket is reduced pairwise in canonical order.
    pub fn series_with<C, F>(&self, par: Parallelism, conv: F) -> Result<TruncatedSeries<C>>
    where
        C: Coeff,
        F: Fn(&Contribution) -> Result<C> + Sync + Send,
    {
        let nonzero: Vec<&Contribution> = self.items.iter().filter(|c| !c.is_zero()).collect();
        let values = par.try_map(&nonzero, |c| conv(c))?;
        let mut buckets: BTreeMap<SExp, Vec<C>> = BTreeMap::new();
        for (c, v) in nonzero.iter().zip(values) {
            buckets.entry(self.exponent(c)).or_default().push(v);
        }
        let keys: Vec<SExp> = buckets.keys().copied().collect();
        let groups: Vec<Vec<C>> = buckets.into_values().collect();
        let sums = par.map(&groups, |g| tree_sum(g.clone()));
        let mut s = TruncatedSeries::zero(self.nvars(), self.order);
        for (e, c) in keys.iter().zip(sums) {
            s.add_term(e, c);
        }
        Ok(s)
    }

    pub fn exact_series(&self, par: Parallelism) -> Result<TruncatedSeries<BracketFraction>> {
        self.series_with(par, |c| BracketFraction::from_bracket_product(&c.signed_value()))
    }

    pub fn modular_series<const P: u64>(&self, pt: &EvalPoint<P>) -> Result<TruncatedSeries<Fp<P>>> {
        self.series_with(Parallelism::Sequential, |c| pt.bracket_product(&c.signed_value()))
    }
}

/// Exact truncated partition function, one variable per colour.
pub fn dt_partition_function(
    action: Option<&GroupAction>,
    order: u32,
    rule: &SignRule,
    par: Parallelism,
) -> Result<TruncatedSeries<BracketFraction>> {
    collect_contributions(action, order, rule, par, None)?.exact_series(par)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{BracketProduct, Monomial, T4, Y};

    #[test]
    fn order_zero_is_one() {
        let s = dt_partition_function(None, 0, &SignRule::default(), Parallelism::Sequential).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.constant_term().equals(&BracketFraction::one()));
    }

    #[test]
    fn first_coefficient_trivial_group() {
        let s = dt_partition_function(None, 1, &SignRule::default(), Parallelism::Sequential).unwrap();
        let t = |a, b, c| Monomial::t(a, b, c, 0);
        let v = BracketProduct::new(
            -1,
            Monomial::ONE,
            vec![Monomial::var(Y), t(1, 1, 0), t(1, 0, 1), t(0, 1, 1)],
            vec![t(1, 0, 0), t(0, 1, 0), t(0, 0, 1), Monomial::var(T4).cy_reduce()],
        )
        .unwrap();
        assert!(s.coeff(&[1]).equals(&BracketFraction::from_bracket_product(&v).unwrap()));
    }

    #[test]
    fn z2_has_no_pure_q1_term() {
        let g = GroupAction::zr(2).unwrap();
        let s = dt_partition_function(Some(&g), 2, &SignRule::default(), Parallelism::Sequential).unwrap();
        assert!(s.coeff(&[0, 1]).is_zero());
        assert!(!s.coeff(&[1, 1]).is_zero());
    }
}
