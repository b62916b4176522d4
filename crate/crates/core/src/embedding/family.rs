use std::io::{BufRead, Write};

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::seed::rng_for;

/// `R` rounds of `r + 1` landmark sets each; set `i` of a round has `M^i`
/// members drawn uniformly with replacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LandmarkFamily {
    n: usize,
    base: u32,
    max_exp: u32,
    rounds: u32,
    seed: u64,
    /// Round-major, size-ascending within a round.
    sets: Vec<Vec<NodeId>>,
}

impl LandmarkFamily {
    /// Draws a family for a graph with `n` nodes.
    ///
    /// Sets are drawn round by round, smallest first, from one stream seeded
    /// by `seed`. Families that differ only in `rounds` therefore share their
    /// leading rounds.
    pub fn sample(n: usize, base: u32, max_exp: u32, rounds: u32, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("cannot sample landmarks from an empty graph"));
        }
        check_shape(base, max_exp)?;
        if rounds == 0 {
            return Err(Error::param("round count R must be at least 1"));
        }
        let sizes = (0..=max_exp)
            .map(|i| {
                base.checked_pow(i)
                    .ok_or_else(|| Error::param(format!("set size {base}^{i} overflows")))
            })
            .collect::<Result<Vec<_>>>()?;
        if *sizes.last().unwrap() as usize > n {
            log::warn!(
                "largest landmark set {base}^{max_exp} = {} exceeds n = {n}",
                sizes.last().unwrap()
            );
        }
        let mut rng = rng_for(seed, "family", &[]);
        let mut sets = Vec::with_capacity(rounds as usize * sizes.len());
        for _ in 0..rounds {
            for &size in &sizes {
                sets.push(
                    (0..size)
                        .map(|_| rng.random_range(0..n as NodeId))
                        .collect(),
                );
            }
        }
        Ok(LandmarkFamily {
            n,
            base,
            max_exp,
            rounds,
            seed,
            sets,
        })
    }

    /// Wraps explicitly chosen sets (round-major, `max_exp + 1` per round).
    ///
    /// Set sizes are not required to be powers of `base`; fixtures use this
    /// to pin exact landmarks. Zero rounds is allowed and yields an empty
    /// family.
    pub fn from_sets(
        n: usize,
        base: u32,
        max_exp: u32,
        seed: u64,
        sets: Vec<Vec<NodeId>>,
    ) -> Result<Self> {
        check_shape(base, max_exp)?;
        let per_round = max_exp as usize + 1;
        if !sets.len().is_multiple_of(per_round) {
            return Err(Error::param(format!(
                "{} sets do not divide into rounds of {per_round}",
                sets.len()
            )));
        }
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::param(format!("landmark set {i} is empty")));
            }
            if let Some(&bad) = set.iter().find(|&&s| s as usize >= n) {
                return Err(Error::param(format!(
                    "landmark {bad} out of range for {n} nodes"
                )));
            }
        }
        let rounds =
            u32::try_from(sets.len() / per_round).map_err(|_| Error::param("too many rounds"))?;
        Ok(LandmarkFamily {
            n,
            base,
            max_exp,
            rounds,
            seed,
            sets,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn max_exp(&self) -> u32 {
        self.max_exp
    }

    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `D = R · (r + 1)`.
    pub fn dims(&self) -> usize {
        self.sets.len()
    }

    /// All sets as sampled, possibly with repeated members.
    pub fn sets(&self) -> &[Vec<NodeId>] {
        &self.sets
    }

    pub fn set(&self, round: u32, index: u32) -> &[NodeId] {
        &self.sets[round as usize * (self.max_exp as usize + 1) + index as usize]
    }

    /// Set `c` with duplicates removed, ascending.
    pub fn distinct_set(&self, c: usize) -> Vec<NodeId> {
        let mut s = self.sets[c].clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Text form: a header line, then one line per set:
    /// `round index member member ...`.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(
            w,
            "# lmk-family n={} M={} r={} R={} seed={}",
            self.n, self.base, self.max_exp, self.rounds, self.seed
        )?;
        let per_round = self.max_exp as usize + 1;
        for (c, set) in self.sets.iter().enumerate() {
            write!(w, "{} {}", c / per_round, c % per_round)?;
            for s in set {
                write!(w, " {s}")?;
            }
            writeln!(w)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::format("empty family file"))?;
        let header = header?;
        let fields = header
            .strip_prefix("# lmk-family")
            .ok_or_else(|| Error::format("missing `# lmk-family` header"))?;
        let get = |key: &str| -> Result<u64> {
            fields
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
                .ok_or_else(|| Error::format(format!("header lacks {key}")))?
                .parse()
                .map_err(|_| Error::format(format!("header field {key} is not an integer")))
        };
        let n = get("n")? as usize;
        let base = to_u32(get("M")?)?;
        let max_exp = to_u32(get("r")?)?;
        let rounds = get("R")?;
        let seed = get("seed")?;
        let per_round = max_exp as u64 + 1;
        let mut sets = Vec::new();
        for (i, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parse_err = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| parse_err("non-integer token"))?;
            if nums.len() < 3 {
                return Err(parse_err("expected `round index member...`"));
            }
            let c = sets.len() as u64;
            if nums[0] != c / per_round || nums[1] != c % per_round {
                return Err(parse_err("sets out of order"));
            }
            let set = nums[2..]
                .iter()
                .map(|&s| NodeId::try_from(s).map_err(|_| parse_err("node id too large")))
                .collect::<Result<Vec<_>>>()?;
            sets.push(set);
        }
        if sets.len() as u64 != rounds * per_round {
            return Err(Error::format(format!(
                "header declares {rounds} rounds but file holds {} sets",
                sets.len()
            )));
        }
        LandmarkFamily::from_sets(n, base, max_exp, seed, sets)
    }
}

fn to_u32(x: u64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::format(format!("{x} too large")))
}

/// The embedding header stores `M` and `r` as u16.
fn check_shape(base: u32, max_exp: u32) -> Result<()> {
    if base <= 1 {
        return Err(Error::param(format!("base M = {base} must exceed 1")));
    }
    if base > u16::MAX as u32 || max_exp > u16::MAX as u32 {
        return Err(Error::param("M and r must fit in 16 bits"));
    }
    Ok(())
}
