//! Word discriminability: cosine distance, category discriminability index,
//! same-different mAP and centroid neighborhoods.

mod cdi;
mod centroids;
mod cosine;
mod map;

pub use cdi::{cdi_all, cdi_category, CategoryCdi, CdiResult};
pub use centroids::{centroids, nearest_centroids, CentroidTable};
pub use cosine::{cosine_distance, cosine_similarity};
pub use map::{average_precisions, map_same_different, MAP_VARIANT};

pub(crate) use cosine::{clamp_unit, unit_rows};
