use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Arrangement, Instance, PreferenceProfile, SeatGraph};
use crate::rational::Rational;

/// Small instances with known price-of-fairness behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PofFamily {
    /// Four agents on two disjoint edges; fairness costs a factor `x / 2y`.
    Unbounded { x: u64, y: u64 },
    /// `n` clique-likers and a directed `n`-cycle on `K_n` plus `n/2` edges.
    Binary { n: usize },
    /// Symmetric variant: undirected cycle, `K_n` plus `n/3` triangles.
    SymmetricTriangles { n: usize },
    /// Three mutually liking agents on a path: nothing is envy-free.
    NoEnvyP3,
}

impl PofFamily {
    pub fn id(self) -> &'static str {
        match self {
            PofFamily::Unbounded { .. } => "unbounded",
            PofFamily::Binary { .. } => "binary",
            PofFamily::SymmetricTriangles { .. } => "symmetric_triangles",
            PofFamily::NoEnvyP3 => "no_envy_p3",
        }
    }

    /// Builds a family member from its id and integer parameters
    /// (`x y` for `unbounded`, `n` for `binary` and `symmetric_triangles`).
    pub fn from_id(id: &str, params: &[u64]) -> Result<PofFamily> {
        let want = |count: usize| {
            if params.len() == count {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "family {id} takes {count} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match id {
            "unbounded" => want(2).map(|_| PofFamily::Unbounded { x: params[0], y: params[1] }),
            "binary" => want(1).map(|_| PofFamily::Binary { n: params[0] as usize }),
            "symmetric_triangles" => want(1).map(|_| PofFamily::SymmetricTriangles { n: params[0] as usize }),
            "no_envy_p3" => want(0).map(|_| PofFamily::NoEnvyP3),
            _ => Err(Error::InvalidArgument(format!("unknown family {id:?}"))),
        }
    }
}

impl fmt::Display for PofFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for PofFamily {
    type Err = Error;

    /// Parses `id` or `id:p1,p2`.
    fn from_str(s: &str) -> Result<PofFamily> {
        let (id, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split(',')
            .filter(|p| !p.is_empty())
            .map(|p| p.trim().parse::<u64>().map_err(|_| Error::InvalidArgument(format!("bad parameter {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        PofFamily::from_id(id, &params)
    }
}

fn check(family: PofFamily) -> Result<()> {
    let fail = |msg: String| Err(Error::InvalidArgument(msg));
    match family {
        PofFamily::Unbounded { x, y } if !(x >= y && y >= 1) => fail(format!("unbounded needs x >= y >= 1, got x = {x}, y = {y}")),
        PofFamily::Binary { n } if n == 0 || n % 2 != 0 => fail(format!("binary needs a positive even n, got {n}")),
        PofFamily::SymmetricTriangles { n } if n == 0 || n % 3 != 0 => {
            fail(format!("symmetric_triangles needs a positive multiple of 3, got {n}"))
        }
        _ => Ok(()),
    }
}

/// Clique `K_n` on seats `0..n` followed by `n / size` disjoint cliques of `size`.
fn clique_plus_blocks(n: usize, size: usize) -> SeatGraph {
    let big = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    let small = (0..n / size).flat_map(move |c| {
        let base = n + c * size;
        (0..size).flat_map(move |i| (i + 1..size).map(move |j| (base + i, base + j)))
    });
    SeatGraph::new(2 * n, big.chain(small)).expect("blocks are simple")
}

/// Agents `0..n` form the clique group `A_K`, agents `n..2n` the cycle group `A_C`.
pub fn pof_family(family: PofFamily) -> Result<Instance> {
    check(family)?;
    match family {
        PofFamily::Unbounded { x, y } => {
            let (x, y) = (Rational::from(x as i64), Rational::from(y as i64));
            let z = Rational::ZERO;
            let rows = vec![vec![z, y, x, z], vec![y, z, z, x], vec![z, x, z, y], vec![x, z, y, z]];
            Instance::new(SeatGraph::new(4, [(0, 1), (2, 3)])?, PreferenceProfile::new(rows)?)
        }
        PofFamily::Binary { n } | PofFamily::SymmetricTriangles { n } => {
            let symmetric = matches!(family, PofFamily::SymmetricTriangles { .. });
            let profile = PreferenceProfile::from_fn(2 * n, |p, q| {
                let liked = if p < n && q < n {
                    true
                } else if p >= n && q >= n {
                    let (i, j) = (p - n, q - n);
                    j == (i + 1) % n || (symmetric && i == (j + 1) % n)
                } else {
                    false
                };
                if liked {
                    Rational::ONE
                } else {
                    Rational::ZERO
                }
            })?;
            let block = if symmetric { 3 } else { 2 };
            Instance::new(clique_plus_blocks(n, block), profile)
        }
        PofFamily::NoEnvyP3 => Instance::new(SeatGraph::path(3), PreferenceProfile::from_fn(3, |_, _| Rational::ONE)?),
    }
}

/// The two arrangements compared in the construction: the clique group on
/// the clique (welfare-optimal), then the cycle group on the clique (fair).
/// Cycle agents fill the small blocks in cycle order.
pub fn pof_proof_arrangements(family: PofFamily) -> Result<Option<(Arrangement, Arrangement)>> {
    check(family)?;
    let n = match family {
        PofFamily::Binary { n } | PofFamily::SymmetricTriangles { n } => n,
        _ => return Ok(None),
    };
    let optimal = Arrangement::identity(2 * n);
    let fair = Arrangement::new((0..2 * n).map(|p| (p + n) % (2 * n)).collect())?;
    Ok(Some((optimal, fair)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_family_strings() {
        assert_eq!("unbounded:5,1".parse::<PofFamily>().unwrap(), PofFamily::Unbounded { x: 5, y: 1 });
        assert_eq!("no_envy_p3".parse::<PofFamily>().unwrap(), PofFamily::NoEnvyP3);
        assert!("binary".parse::<PofFamily>().is_err());
        assert!(pof_family(PofFamily::Binary { n: 3 }).is_err());
        assert!(pof_family(PofFamily::Unbounded { x: 1, y: 2 }).is_err());
    }

    #[test]
    fn binary_shape() {
        let inst = pof_family(PofFamily::Binary { n: 4 }).unwrap();
        assert_eq!(inst.agent_count(), 8);
        assert_eq!(inst.graph().edge_count(), 8);
        assert_eq!(inst.graph().average_degree(), Rational::from(2));
        let flags = inst.profile().classify();
        assert!(flags.binary && !flags.symmetric);
    }

    #[test]
    fn triangle_proof_welfare() {
        let fam = PofFamily::SymmetricTriangles { n: 6 };
        let inst = pof_family(fam).unwrap();
        assert!(inst.profile().classify().symmetric);
        let (opt, fair) = pof_proof_arrangements(fam).unwrap().unwrap();
        assert_eq!(inst.social_welfare(&opt).unwrap(), Rational::from(38));
        assert_eq!(inst.social_welfare(&fair).unwrap(), Rational::from(24));
    }
}
