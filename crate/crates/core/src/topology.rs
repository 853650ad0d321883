//! Neighborhood topologies for the swarm.

/// How particles see each other's personal bests.
///
/// `Global` connects every particle to every other; `Ring` connects particle
/// `i` exactly to `{i-1, i, i+1}` modulo the population size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Global,
    Ring,
}

impl Topology {
    /// Indices in the neighborhood of particle `i` for population size `m`.
    ///
    /// Ring neighborhoods are yielded in `[i-1, i, i+1]` order.
    pub fn neighbors(self, i: usize, m: usize) -> Neighborhood {
        debug_assert!(i < m);
        match self {
            Topology::Global => Neighborhood::Global { next: 0, m },
            Topology::Ring => {
                debug_assert!(m >= 3, "ring topology requires at least 3 particles");
                Neighborhood::Ring {
                    items: [(i + m - 1) % m, i, (i + 1) % m],
                    pos: 0,
                }
            }
        }
    }

    /// Number of particles in each neighborhood.
    pub fn neighborhood_size(self, m: usize) -> usize {
        match self {
            Topology::Global => m,
            Topology::Ring => 3,
        }
    }
}

impl std::fmt::Display for Topology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Topology::Global => write!(f, "global"),
            Topology::Ring => write!(f, "ring"),
        }
    }
}

/// Iterator over a particle's neighborhood.
#[derive(Debug, Clone)]
pub enum Neighborhood {
    Global { next: usize, m: usize },
    Ring { items: [usize; 3], pos: usize },
}

impl Iterator for Neighborhood {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match self {
            Neighborhood::Global { next, m } => {
                if *next < *m {
                    *next += 1;
                    Some(*next - 1)
                } else {
                    None
                }
            }
            Neighborhood::Ring { items, pos } => {
                if *pos < 3 {
                    *pos += 1;
                    Some(items[*pos - 1])
                } else {
                    None
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_wraps_at_both_ends() {
        let v: Vec<usize> = Topology::Ring.neighbors(0, 5).collect();
        assert_eq!(v, vec![4, 0, 1]);
        let v: Vec<usize> = Topology::Ring.neighbors(4, 5).collect();
        assert_eq!(v, vec![3, 4, 0]);
    }

    #[test]
    fn global_covers_population() {
        let v: Vec<usize> = Topology::Global.neighbors(2, 4).collect();
        assert_eq!(v, vec![0, 1, 2, 3]);
    }
}
