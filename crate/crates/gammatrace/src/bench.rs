//! Wall-clock timing of both algorithms over a range of `n`.

use std::fmt;
use std::io;
use std::time::{Duration, Instant};

use gammatrace_core::partitions::partition_count;
use gammatrace_core::solver::{general_algorithm, minimal_algorithm};
use gammatrace_core::SamplerConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    General,
    Minimal,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::General => "general",
            Self::Minimal => "minimal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Seconds(f64),
    /// Skipped: over the size limit, or an earlier `n` ran past the time limit.
    Limit,
    Crashed,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Seconds(s) => write!(f, "{s:.6}"),
            Self::Limit => f.write_str("limit"),
            Self::Crashed => f.write_str("crashed"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub max_n: usize,
    pub methods: Vec<Method>,
    pub sampler: SamplerConfig,
    /// Once a cell takes longer than this, larger `n` for that method are
    /// not attempted.
    pub time_limit: Duration,
    pub general_max_n: usize,
    pub minimal_max_n: usize,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: usize,
    pub p: u128,
    pub cells: Vec<(Method, Cell)>,
}

fn time_one(method: Method, n: usize, sampler: &SamplerConfig) -> Cell {
    let start = Instant::now();
    let ok = match method {
        Method::General => general_algorithm(n, sampler).is_ok(),
        Method::Minimal => minimal_algorithm(n).is_ok(),
    };
    if ok {
        Cell::Seconds(start.elapsed().as_secs_f64())
    } else {
        Cell::Crashed
    }
}

/// Runs `n = 1..=max_n`, handing each row to `sink` as soon as it is done.
pub fn run(cfg: &BenchConfig, mut sink: impl FnMut(&BenchRow) -> io::Result<()>) -> io::Result<Vec<BenchRow>> {
    let mut over_time: Vec<Method> = Vec::new();
    let mut rows = Vec::with_capacity(cfg.max_n);
    for n in 1..=cfg.max_n {
        let mut cells = Vec::with_capacity(cfg.methods.len());
        for &method in &cfg.methods {
            let size_limit = match method {
                Method::General => cfg.general_max_n,
                Method::Minimal => cfg.minimal_max_n,
            };
            let cell = if n > size_limit || over_time.contains(&method) {
                Cell::Limit
            } else {
                time_one(method, n, &cfg.sampler)
            };
            if matches!(cell, Cell::Seconds(s) if s > cfg.time_limit.as_secs_f64()) {
                over_time.push(method);
            }
            cells.push((method, cell));
        }
        let row = BenchRow {
            n,
            p: partition_count(n),
            cells,
        };
        sink(&row)?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn csv_header(methods: &[Method]) -> Vec<String> {
    ["n", "p"]
        .into_iter()
        .map(String::from)
        .chain(methods.iter().map(|m| m.name().to_string()))
        .collect()
}

pub fn csv_record(row: &BenchRow) -> Vec<String> {
    [row.n.to_string(), row.p.to_string()]
        .into_iter()
        .chain(row.cells.iter().map(|(_, c)| c.to_string()))
        .collect()
}
