use std::sync::OnceLock;

use super::Params;
use crate::cells::{CellPartition, DPrimeSet, MuGraph, OmegaSet, PartitionSide};
use crate::coxeter::{GroupBall, GroupProfile};
use crate::error::{Error, Result};
use crate::hecke::ProductTable;
use crate::kl::{AFunctionTable, KlTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Pairs `(x, y)` with `l(x) + l(y)` above this are not scanned.
    pub pair_budget: usize,
    /// Blocks are certified only below `radius - margin`.
    pub margin: usize,
    pub parallel: bool,
    /// Zero wall times so reports are byte-identical across runs.
    pub deterministic: bool,
}

impl Options {
    /// Full pair budget, margin `a₀ + 1` and parallel tables.
    pub fn for_ball(ball: &GroupBall) -> Self {
        Options {
            pair_budget: ball.radius(),
            margin: GroupProfile::of(ball.matrix()).a0 + 1,
            parallel: true,
            deterministic: false,
        }
    }
}

/// A ball plus every derived table, each built on first use.
pub struct Analysis {
    ball: GroupBall,
    options: Options,
    profile: GroupProfile,
    kl: OnceLock<KlTable>,
    products: OnceLock<ProductTable>,
    graph: OnceLock<MuGraph>,
    left: OnceLock<CellPartition>,
    two_sided: OnceLock<CellPartition>,
    omega: OnceLock<std::result::Result<OmegaSet, String>>,
    dprime: OnceLock<DPrimeSet>,
    afun: OnceLock<std::result::Result<AFunctionTable, String>>,
}

impl Analysis {
    pub fn new(ball: GroupBall, options: Options) -> Self {
        let profile = GroupProfile::of(ball.matrix());
        Analysis {
            ball,
            options,
            profile,
            kl: OnceLock::new(),
            products: OnceLock::new(),
            graph: OnceLock::new(),
            left: OnceLock::new(),
            two_sided: OnceLock::new(),
            omega: OnceLock::new(),
            dprime: OnceLock::new(),
            afun: OnceLock::new(),
        }
    }

    /// Uses a precomputed (for instance cached) KL table.
    pub fn with_kl(self, kl: KlTable) -> Result<Self> {
        if kl.matrix_hash() != self.ball.matrix().content_hash() || kl.radius() < self.ball.radius() {
            return Err(Error::MissingPrerequisite(
                "KL table was built for a different matrix or a smaller ball".into(),
            ));
        }
        let _ = self.kl.set(kl);
        Ok(self)
    }

    pub fn ball(&self) -> &GroupBall {
        &self.ball
    }

    pub fn options(&self) -> &Options {
        &self.options
    }

    pub fn profile(&self) -> &GroupProfile {
        &self.profile
    }

    pub fn params(&self) -> Params {
        Params {
            gens: self.ball.matrix().gens().to_vec(),
            matrix_hash: self.ball.matrix().content_hash(),
            radius: self.ball.radius(),
            pair_budget: self.options.pair_budget,
            margin: self.options.margin,
        }
    }

    pub fn kl(&self) -> &KlTable {
        self.kl
            .get_or_init(|| KlTable::build_with(&self.ball, self.options.parallel))
    }

    pub fn products(&self) -> &ProductTable {
        self.products
            .get_or_init(|| ProductTable::build(&self.ball, self.options.pair_budget))
    }

    pub fn graph(&self) -> &MuGraph {
        self.graph.get_or_init(|| MuGraph::build(&self.ball, self.kl()))
    }

    pub fn left_cells(&self) -> &CellPartition {
        self.left.get_or_init(|| {
            CellPartition::build(&self.ball, self.graph(), PartitionSide::Left, self.options.margin)
        })
    }

    pub fn two_sided_cells(&self) -> &CellPartition {
        self.two_sided.get_or_init(|| {
            CellPartition::build(&self.ball, self.graph(), PartitionSide::TwoSided, self.options.margin)
        })
    }

    /// The lowest cell, or `MissingPrerequisite` when it cannot be seeded.
    pub fn omega(&self) -> Result<&OmegaSet> {
        self.omega
            .get_or_init(|| OmegaSet::lowest_cell(&self.ball).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::MissingPrerequisite(format!("lowest cell: {e}")))
    }

    pub fn dprime(&self) -> Result<&DPrimeSet> {
        let omega = self.omega()?;
        Ok(self.dprime.get_or_init(|| DPrimeSet::build(&self.ball, omega)))
    }

    pub fn afun(&self) -> Result<&AFunctionTable> {
        self.afun
            .get_or_init(|| {
                AFunctionTable::build(
                    &self.ball,
                    self.kl(),
                    self.options.pair_budget,
                    self.profile.a0,
                    self.profile.complete_graph,
                    self.omega().ok(),
                )
                .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| Error::MissingPrerequisite(format!("a-function table: {e}")))
    }

    /// Is `w` inside the certified region `l(w) <= radius - margin`?
    pub fn in_region(&self, w: crate::coxeter::Elem) -> bool {
        self.ball.length(w) + self.options.margin <= self.ball.radius()
    }
}
