use std::collections::HashMap;

use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::fock::MultiIndex;
use crate::linalg::{Echelon, Insert, PivotRule, SparseRow};

use super::{Block, BlockKey, GeneratorShift, Tensor};

type Vector<E> = HashMap<MultiIndex, E>;

/// `pi_out(Delta t_ij)` applied to the column `T e_x`.
fn lhs<R: CoeffRing + Clone>(t: &Tensor<R>, g: &GeneratorShift, col: &[(MultiIndex, R::Elem)]) -> Vector<R::Elem> {
    t.out_action.apply_vector(t.ring(), g.i, g.j, col)
}

/// Terms `(w, c)` of `rev(pi_in(Delta t_ij) rev x)`, merged by `w`.
fn rhs_terms<R: CoeffRing + Clone>(t: &Tensor<R>, g: &GeneratorShift, x: MultiIndex) -> Vec<(MultiIndex, R::Elem)> {
    t.in_action.apply(t.ring(), g.i, g.j, x.reversed()).into_iter().map(|(y, c)| (y.reversed(), c)).collect()
}

fn accumulate<R: CoeffRing>(ring: &R, acc: &mut Vector<R::Elem>, k: MultiIndex, v: R::Elem) {
    match acc.get_mut(&k) {
        Some(x) => ring.add_assign(x, &v),
        None => {
            acc.insert(k, v);
        }
    }
}

/// `T(rhs)` using already available blocks.
fn rhs_value<R: CoeffRing + Clone>(
    t: &Tensor<R>,
    terms: &[(MultiIndex, R::Elem)],
    own: Option<&Block<R::Elem>>,
) -> Result<Vector<R::Elem>> {
    let ring = t.ring();
    let mut out = Vector::new();
    for (w, c) in terms {
        let key = t.kind.key(*w);
        let col = match own {
            Some(b) if b.key == key => b.column(w),
            _ => t.block(key)?.column(w),
        };
        for (o, v) in col.iter() {
            accumulate(ring, &mut out, *o, ring.mul(c, v));
        }
    }
    Ok(out)
}

fn same<R: CoeffRing>(ring: &R, a: &Vector<R::Elem>, b: &Vector<R::Elem>) -> bool {
    let z = ring.zero();
    a.keys().chain(b.keys()).all(|k| ring.is_zero(&ring.sub(a.get(k).unwrap_or(&z), b.get(k).unwrap_or(&z))))
}

/// Solves one block given the blocks below it.
pub(crate) fn solve_block<R: CoeffRing + Clone>(t: &Tensor<R>, key: BlockKey) -> Result<Block<R::Elem>> {
    let ring = t.ring();
    let states = t.kind.block_states(key);
    let index: HashMap<MultiIndex, usize> = states.iter().enumerate().map(|(k, s)| (*s, k)).collect();

    if key != BlockKey::new(0, 0) {
        if let Some((entries, used)) = solve_from_below(t, key, &states, &index)? {
            let block = Block::new(ring, key, states, entries, 1);
            if t.verifies_blocks() {
                verify_block(t, &block, &used)?;
            }
            return Ok(block);
        }
    }
    let (entries, nullity) = solve_general(t, key, &states, &index)?;
    let uniqueness = if key == BlockKey::new(0, 0) { nullity } else { 1 + nullity };
    let block = Block::new(ring, key, states, entries, uniqueness);
    if t.verifies_blocks() {
        verify_block(t, &block, &[])?;
    }
    Ok(block)
}

/// Uses only equations whose unknown side is the column side of this block
/// (generators raising the weight). Returns `None` without full rank.
#[allow(clippy::type_complexity)]
fn solve_from_below<R: CoeffRing + Clone>(
    t: &Tensor<R>,
    key: BlockKey,
    states: &[MultiIndex],
    index: &HashMap<MultiIndex, usize>,
) -> Result<Option<(Vec<Vec<R::Elem>>, Vec<(usize, MultiIndex)>)>> {
    let ring = t.ring();
    let n = states.len();
    let mut ech = Echelon::new(ring, n, PivotRule::MinComplexity);
    let mut used = Vec::new();
    'outer: for (gi, g) in t.generators.iter().enumerate() {
        if g.shift.0 < 0 || g.shift.1 < 0 || g.shift == (0, 0) {
            continue;
        }
        let Some(lower) = key.offset((-g.shift.0, -g.shift.1)) else { continue };
        let lower_block = t.block(lower)?;
        for x in &lower_block.states {
            let mut row: SparseRow<R::Elem> = Vec::new();
            let mut m: Vector<R::Elem> = Vector::new();
            for (w, c) in rhs_terms(t, g, *x) {
                accumulate(ring, &mut m, w, c);
            }
            for (w, c) in m {
                if !ring.is_zero(&c) {
                    row.push((index[&w], c));
                }
            }
            let y = lhs(t, g, &lower_block.column(x));
            for (o, c) in y {
                if !ring.is_zero(&c) {
                    let k = *index.get(&o).ok_or(Error::Inconsistent { key: key.pair() })?;
                    row.push((n + k, c));
                }
            }
            row.sort_by_key(|e| e.0);
            match ech.insert(row) {
                Insert::Pivot(_) => used.push((gi, *x)),
                Insert::Dependent => {}
                Insert::Inconsistent => return Err(Error::Inconsistent { key: key.pair() }),
            }
            if ech.rank() == n {
                break 'outer;
            }
        }
    }
    let Some(sol) = ech.solution() else { return Ok(None) };
    let mut entries = vec![vec![ring.zero(); n]; n];
    for (w, rhs) in sol.into_iter().enumerate() {
        for (o, v) in rhs {
            entries[o][w] = v;
        }
    }
    Ok(Some((entries, used)))
}

/// All equations touching the block, with the `n^2` entries as unknowns.
fn solve_general<R: CoeffRing + Clone>(
    t: &Tensor<R>,
    key: BlockKey,
    states: &[MultiIndex],
    index: &HashMap<MultiIndex, usize>,
) -> Result<(Vec<Vec<R::Elem>>, usize)> {
    let ring = t.ring();
    let n = states.len();
    let unknowns = n * n;
    let u = |o: usize, w: usize| o * n + w;
    let mut ech = Echelon::new(ring, unknowns, PivotRule::MinComplexity);
    let push = |ech: &mut Echelon<'_, R>, mut row: SparseRow<R::Elem>| -> Result<()> {
        row.retain(|(_, c)| !ring.is_zero(c));
        row.sort_by_key(|e| e.0);
        merge_duplicates(ring, &mut row);
        match ech.insert(row) {
            Insert::Inconsistent => Err(Error::Inconsistent { key: key.pair() }),
            _ => Ok(()),
        }
    };
    for g in &t.generators {
        let raising = g.shift.0 >= 0 && g.shift.1 >= 0 && g.shift != (0, 0);
        if raising {
            let Some(lower) = key.offset((-g.shift.0, -g.shift.1)) else { continue };
            let lower_block = t.block(lower)?;
            for x in &lower_block.states {
                let terms = rhs_terms(t, g, *x);
                let y = lhs(t, g, &lower_block.column(x));
                for (o, _) in states.iter().enumerate() {
                    let mut row: SparseRow<R::Elem> =
                        terms.iter().map(|(w, c)| (u(o, index[w]), c.clone())).collect();
                    if let Some(v) = y.get(&states[o]) {
                        row.push((unknowns, v.clone()));
                    }
                    push(&mut ech, row)?;
                }
            }
        } else {
            // unknowns on the left; for a lowering generator the right side is known
            let target = key.offset(g.shift);
            let Some(target) = target else { continue };
            let target_states = t.kind.block_states(target);
            for x in states {
                let xi = index[x];
                let mut rows: HashMap<MultiIndex, SparseRow<R::Elem>> =
                    target_states.iter().map(|z| (*z, Vec::new())).collect();
                for (o, so) in states.iter().enumerate() {
                    for (z, c) in t.out_action.apply(ring, g.i, g.j, *so) {
                        rows.get_mut(&z).ok_or(Error::Inconsistent { key: key.pair() })?.push((u(o, xi), c));
                    }
                }
                let terms = rhs_terms(t, g, *x);
                if g.shift == (0, 0) {
                    for (w, c) in &terms {
                        for z in states {
                            rows.get_mut(z).unwrap().push((u(index[z], index[w]), ring.neg(c)));
                        }
                    }
                } else {
                    for (z, v) in rhs_value(t, &terms, None)? {
                        rows.get_mut(&z).ok_or(Error::Inconsistent { key: key.pair() })?.push((unknowns, v));
                    }
                }
                let mut zs: Vec<MultiIndex> = rows.keys().copied().collect();
                zs.sort();
                for z in zs {
                    let row = rows.remove(&z).unwrap();
                    push(&mut ech, row)?;
                }
            }
        }
    }
    let rank = ech.rank();
    let nullity = unknowns - rank;
    let mut entries = vec![vec![ring.zero(); n]; n];
    if key == BlockKey::new(0, 0) {
        if n != 1 || nullity != 1 {
            return Err(Error::NotUnique { key: key.pair(), dimension: nullity });
        }
        entries[0][0] = ring.one();
        return Ok((entries, nullity));
    }
    let Some(sol) = ech.solution() else {
        return Err(Error::NotUnique { key: key.pair(), dimension: nullity });
    };
    for (k, rhs) in sol.into_iter().enumerate() {
        if let Some((_, v)) = rhs.into_iter().next() {
            entries[k / n][k % n] = v;
        }
    }
    Ok((entries, nullity))
}

fn merge_duplicates<R: CoeffRing>(ring: &R, row: &mut SparseRow<R::Elem>) {
    let mut out: SparseRow<R::Elem> = Vec::with_capacity(row.len());
    for (c, v) in row.drain(..) {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => ring.add_assign(lv, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !ring.is_zero(v));
    *row = out;
}

/// Checks every equation whose highest block is `block`, except the rows
/// in `skip` that the solve satisfied by construction.
fn verify_block<R: CoeffRing + Clone>(t: &Tensor<R>, block: &Block<R::Elem>, skip: &[(usize, MultiIndex)]) -> Result<()> {
    let ring = t.ring();
    let key = block.key;
    for (gi, g) in t.generators.iter().enumerate() {
        let raising = g.shift.0 >= 0 && g.shift.1 >= 0 && g.shift != (0, 0);
        let (source, xs): (Option<std::sync::Arc<Block<R::Elem>>>, Vec<MultiIndex>) = if raising {
            match key.offset((-g.shift.0, -g.shift.1)) {
                Some(lower) => {
                    let b = t.block(lower)?;
                    let xs = b.states.clone();
                    (Some(b), xs)
                }
                None => continue,
            }
        } else {
            (None, block.states.clone())
        };
        for x in xs {
            if skip.contains(&(gi, x)) {
                continue;
            }
            let col = match &source {
                Some(b) => b.column(&x),
                None => block.column(&x),
            };
            let left = lhs(t, g, &col);
            let right = rhs_value(t, &rhs_terms(t, g, x), Some(block))?;
            if !same(ring, &left, &right) {
                return Err(Error::Inconsistent { key: key.pair() });
            }
        }
    }
    Ok(())
}
