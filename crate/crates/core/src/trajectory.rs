//! Position logging and the travelled-distance metric.

/// Sum of Euclidean distances between consecutive points.
pub fn total_distance<P: AsRef<[f64]>>(points: &[P]) -> f64 {
    points
        .windows(2)
        .map(|w| euclidean(w[0].as_ref(), w[1].as_ref()))
        .sum()
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Append-only position log with a streaming distance accumulator.
///
/// The distance is maintained even when storage is disabled, so large grids
/// keep the metric without holding every visited vector in memory.
#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    points: Option<Vec<Vec<f64>>>,
    last: Option<Vec<f64>>,
    distance: f64,
    len: usize,
}

impl Trajectory {
    pub fn new(record: bool) -> Self {
        Self {
            points: record.then(Vec::new),
            ..Self::default()
        }
    }

    pub fn push(&mut self, point: &[f64]) {
        match &mut self.last {
            Some(prev) => {
                self.distance += euclidean(prev, point);
                prev.copy_from_slice(point);
            }
            None => self.last = Some(point.to_vec()),
        }
        if let Some(points) = &mut self.points {
            points.push(point.to_vec());
        }
        self.len += 1;
    }

    /// Streaming total distance over everything pushed so far.
    pub fn distance(&self) -> f64 {
        self.distance
    }

    /// Number of pushed positions, stored or not.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Stored positions, `None` when recording is disabled.
    pub fn points(&self) -> Option<&[Vec<f64>]> {
        self.points.as_deref()
    }

    pub fn into_points(self) -> Option<Vec<Vec<f64>>> {
        self.points
    }
}
