//! Grid arguments: a scalar or a `start:stop:count` linspace.

use std::str::FromStr;

/// A finite parameter grid given as `value` or `start:stop:count`.
#[derive(Debug, Clone)]
pub enum Grid {
    Scalar(f64),
    Linspace { start: f64, stop: f64, count: usize },
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Grid::Scalar(v) => vec![v],
            Grid::Linspace { start, stop, count } => (0..count)
                .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                .collect(),
        }
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if !s.contains(':') {
            return s
                .parse::<f64>()
                .map(Grid::Scalar)
                .map_err(|_| format!("expected a number or start:stop:count, got '{s}'"));
        }
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:count, got '{s}'"));
        }
        let start = parts[0]
            .parse::<f64>()
            .map_err(|_| format!("bad grid start '{}'", parts[0]))?;
        let stop = parts[1]
            .parse::<f64>()
            .map_err(|_| format!("bad grid stop '{}'", parts[1]))?;
        let count = parts[2]
            .parse::<usize>()
            .map_err(|_| format!("bad grid count '{}'", parts[2]))?;
        if count < 2 {
            return Err(format!("grid count must be at least 2, got {count}"));
        }
        Ok(Grid::Linspace { start, stop, count })
    }
}
