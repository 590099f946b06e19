use std::fmt;

use crate::error::{Error, Result};

pub type Point = [u8; 4];

/// Downward-closed finite subset of Z_{>=0}^4, boxes sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolidPartition {
    boxes: Vec<Point>,
}

pub fn predecessors(p: &Point) -> impl Iterator<Item = Point> + '_ {
    (0..4).filter(move |&i| p[i] > 0).map(move |i| {
        let mut q = *p;
        q[i] -= 1;
        q
    })
}

pub fn is_downward_closed(sorted: &[Point]) -> bool {
    sorted.iter().all(|p| predecessors(p).all(|q| sorted.binary_search(&q).is_ok()))
}

impl SolidPartition {
    pub fn empty() -> Self {
        SolidPartition { boxes: Vec::new() }
    }

    pub fn new(mut boxes: Vec<Point>) -> Result<Self> {
        boxes.sort_unstable();
        boxes.dedup();
        if !is_downward_closed(&boxes) {
            return Err(Error::Invalid(format!("not downward closed: {:?}", boxes)));
        }
        Ok(SolidPartition { boxes })
    }

    pub fn boxes(&self) -> &[Point] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.boxes.binary_search(p).is_ok()
    }

    /// Boxes `(a,a,a,d)` with `a < d`.
    pub fn diagonal_count(&self) -> usize {
        self.boxes.iter().filter(|b| b[0] == b[1] && b[1] == b[2] && b[0] < b[3]).count()
    }

    pub fn has_box_beyond_l0(&self) -> bool {
        self.boxes.iter().any(|b| b[3] > 0)
    }

    /// `i,j,k,l;...`, or `-` for the empty partition.
    pub fn id(&self) -> String {
        if self.boxes.is_empty() {
            return "-".into();
        }
        self.boxes.iter().map(|b| format!("{},{},{},{}", b[0], b[1], b[2], b[3])).collect::<Vec<_>>().join(";")
    }

    pub fn parse_id(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Self::empty());
        }
        let mut boxes = Vec::new();
        for part in s.split(';') {
            let v: Vec<u8> = part
                .split(',')
                .map(|x| x.trim().parse::<u8>().map_err(|e| Error::Invalid(format!("bad box {part}: {e}"))))
                .collect::<Result<_>>()?;
            if v.len() != 4 {
                return Err(Error::Invalid(format!("bad box {part}")));
            }
            boxes.push([v[0], v[1], v[2], v[3]]);
        }
        Self::new(boxes)
    }

    /// Points that can be added keeping the set downward closed.
    pub fn addable(&self) -> Vec<Point> {
        addable_after(&self.boxes, None)
    }
}

/// Addable points of an ideal, optionally restricted to those lex-greater
/// than `after`.
fn addable_after(boxes: &[Point], after: Option<&Point>) -> Vec<Point> {
    let mut cand: Vec<Point> = if boxes.is_empty() {
        vec![[0; 4]]
    } else {
        boxes
            .iter()
            .flat_map(|b| {
                (0..4).map(move |i| {
                    let mut p = *b;
                    p[i] += 1;
                    p
                })
            })
            .collect()
    };
    cand.sort_unstable();
    cand.dedup();
    cand.retain(|p| {
        after.is_none_or(|a| p > a)
            && boxes.binary_search(p).is_err()
            && predecessors(p).all(|q| boxes.binary_search(&q).is_ok())
    });
    cand
}

impl fmt::Display for SolidPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl fmt::Debug for SolidPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SolidPartition({})", self.id())
    }
}

/// Depth-first enumeration adding boxes in increasing lexicographic order.
/// Every prefix of the sorted box list of an ideal is an ideal, so each
/// partition is produced exactly once, in lexicographic order of box lists.
/// `prune` sees the box list after each addition and may cut the branch.
pub struct PartitionStream<F: FnMut(&[Point]) -> bool> {
    n: usize,
    boxes: Vec<Point>,
    stack: Vec<(Vec<Point>, usize)>,
    prune: F,
    done: bool,
}

impl<F: FnMut(&[Point]) -> bool> PartitionStream<F> {
    pub fn new(n: usize, prune: F) -> Self {
        let stack = if n == 0 { Vec::new() } else { vec![(addable_after(&[], None), 0)] };
        PartitionStream { n, boxes: Vec::new(), stack, prune, done: false }
    }
}

impl<F: FnMut(&[Point]) -> bool> Iterator for PartitionStream<F> {
    type Item = SolidPartition;

    fn next(&mut self) -> Option<SolidPartition> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(SolidPartition::empty());
        }
        loop {
            let (cands, idx) = self.stack.last_mut()?;
            if *idx >= cands.len() {
                self.stack.pop();
                self.boxes.pop();
                if self.stack.is_empty() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            let p = cands[*idx];
            *idx += 1;
            // boxes has one entry per stack level above the current one
            let depth = self.stack.len() - 1;
            self.boxes.truncate(depth);
            self.boxes.push(p);
            if !(self.prune)(&self.boxes) {
                self.boxes.pop();
                continue;
            }
            if self.boxes.len() == self.n {
                let mut sorted = self.boxes.clone();
                sorted.sort_unstable();
                self.boxes.pop();
                return Some(SolidPartition { boxes: sorted });
            }
            let mut sorted = self.boxes.clone();
            sorted.sort_unstable();
            let next = addable_after(&sorted, Some(&p));
            self.stack.push((next, 0));
        }
    }
}

pub fn enumerate_solid_partitions(n: usize) -> PartitionStream<fn(&[Point]) -> bool> {
    fn keep(_: &[Point]) -> bool {
        true
    }
    PartitionStream::new(n, keep as fn(&[Point]) -> bool)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_solid_partitions(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 4, 10, 26]);
    }

    #[test]
    fn output_is_sorted_and_valid() {
        let v: Vec<SolidPartition> = enumerate_solid_partitions(5).collect();
        assert!(v.windows(2).all(|w| w[0].boxes < w[1].boxes));
        assert!(v.iter().all(|p| is_downward_closed(p.boxes())));
    }

    #[test]
    fn id_roundtrip() {
        for p in enumerate_solid_partitions(3) {
            assert_eq!(SolidPartition::parse_id(&p.id()).unwrap(), p);
        }
        assert!(SolidPartition::parse_id("0,0,0,1").is_err());
    }

    #[test]
    fn diagonal_count_example() {
        let p = SolidPartition::new(vec![[0, 0, 0, 0], [0, 0, 0, 1]]).unwrap();
        assert_eq!(p.diagonal_count(), 1);
        assert!(p.has_box_beyond_l0());
    }
}
