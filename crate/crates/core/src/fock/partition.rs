use std::fmt;

/// Parts `n_1 >= n_2 >= ... >= n_d >= 1` of the Fock monomial
/// `a(-n_1)...a(-n_d)|0>`. The empty partition is the vacuum.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn vacuum() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts into canonical (non-increasing) order.
    ///
    /// # Panics
    /// If any part is zero.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "partition parts must be >= 1");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    /// The α-length: number of creation factors.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    pub fn with_part(&self, part: u32) -> Self {
        assert!(part >= 1);
        let mut parts = self.0.clone();
        let pos = parts.partition_point(|&p| p >= part);
        parts.insert(pos, part);
        Partition(parts)
    }

    /// Removes one copy of `part`, if present.
    pub fn without_part(&self, part: u32) -> Option<Self> {
        let pos = self.0.iter().position(|&p| p == part)?;
        let mut parts = self.0.clone();
        parts.remove(pos);
        Some(Partition(parts))
    }

    /// Splits off the largest part: `self = a(-m) rest`.
    pub fn split_largest(&self) -> Option<(u32, Self)> {
        let (&m, rest) = self.0.split_first()?;
        Some((m, Partition(rest.to_vec())))
    }

    /// Groups equal parts as `(part, multiplicity)`, largest part first.
    pub fn grouped(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All partitions of `weight`, in descending lexicographic order.
pub fn partitions_of(weight: u64) -> Vec<Partition> {
    fn go(remaining: u64, max: u64, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            prefix.push(p as u32);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(weight, weight, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight `<= max_weight`, by weight then descending
/// lexicographic order. The vacuum comes first.
pub fn partitions_up_to(max_weight: u64) -> Vec<Partition> {
    (0..=max_weight).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|w| partitions_of(w).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions_up_to(5).len(), 19);
    }

    #[test]
    fn insert_and_remove_keep_order() {
        let p = Partition::new(vec![1, 3, 2, 3]);
        assert_eq!(p.parts(), &[3, 3, 2, 1]);
        assert_eq!(p.with_part(2).parts(), &[3, 3, 2, 2, 1]);
        assert_eq!(p.with_part(4).parts(), &[4, 3, 3, 2, 1]);
        assert_eq!(p.without_part(3).unwrap().parts(), &[3, 2, 1]);
        assert!(p.without_part(5).is_none());
        assert_eq!(p.multiplicity(3), 2);
        assert_eq!(p.grouped(), vec![(3, 2), (2, 1), (1, 1)]);
        assert_eq!(p.weight(), 9);
        assert_eq!(p.length(), 4);
    }
}
