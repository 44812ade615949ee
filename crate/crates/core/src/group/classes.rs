use super::Group;

/// Conjugacy classes. Class `c` is represented by its least element and
/// classes are ordered by representative, so class 0 is `{identity}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    reps: Vec<usize>,
    class_of: Vec<usize>,
}

pub fn conjugacy_classes(g: &Group) -> ClassPartition {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    let mut reps = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        let mut members: Vec<usize> = (0..n).map(|x| g.conj(x, a)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = idx;
        }
        reps.push(a);
        classes.push(members);
    }
    ClassPartition {
        classes,
        reps,
        class_of,
    }
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn representative(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    #[inline]
    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_preset, Caps};

    fn sizes(name: &str) -> Vec<usize> {
        let g = group_preset(name, None, Caps::default()).unwrap();
        let mut s = conjugacy_classes(&g).sizes();
        s.sort_unstable();
        s
    }

    #[test]
    fn class_sizes() {
        assert_eq!(sizes("S3"), vec![1, 2, 3]);
        assert_eq!(sizes("Q8"), vec![1, 1, 2, 2, 2]);
        assert_eq!(sizes("D8").len(), 5);
        assert_eq!(sizes("C6"), vec![1; 6]);
        assert_eq!(sizes("A4"), vec![1, 3, 4, 4]);
        assert_eq!(sizes("S4"), vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn orbit_stabilizer() {
        for name in ["S3", "Q8", "D8", "A4", "S4", "S3xC2"] {
            let g = group_preset(name, None, Caps::default()).unwrap();
            let cp = conjugacy_classes(&g);
            assert_eq!(cp.representative(0), 0);
            for a in 0..g.order() {
                let c = cp.class_of(a);
                assert_eq!(cp.size(c) * g.centralizer(a).order(), g.order());
                assert_eq!(cp.representative(c), cp.class(c)[0]);
            }
        }
    }
}
