//! Set partitions of `0..n` as restricted-growth strings.
//!
//! A restricted-growth string `a` has `a[0] = 0` and
//! `a[i] <= 1 + max(a[0..i])`; each string encodes one set partition, with
//! blocks numbered in order of their least element. Iteration order is
//! lexicographic on the strings.

/// Iterator over all restricted-growth strings of length `n`.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    labels: Vec<usize>,
    // prefix maxima: max_before[i] = max(labels[0..i]) (0 for i = 0)
    max_before: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions {
            labels: vec![0; n],
            max_before: vec![0; n],
            started: false,
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.labels.clone());
        }
        let n = self.labels.len();
        // rightmost position that can still be incremented
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.labels[i] <= self.max_before[i] {
                self.labels[i] += 1;
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.max_before[j] = self.max_before[j - 1].max(self.labels[j - 1]);
                }
                return Some(self.labels.clone());
            }
        }
        self.done = true;
        None
    }
}

/// Bell number `B(n)`.
pub fn bell(n: usize) -> u128 {
    // Bell triangle
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

/// Relabel an arbitrary labelling so that blocks are numbered by least element.
pub fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}
