//! Rooted patterns, coverage detectors and the 2-graph tools they use.

mod detect;
mod embed;
mod matching;
mod pattern;
mod structure;

pub use detect::{
    covers_p2_center, covers_p3_position2, covers_pk, covers_sk, covers_sk_center, covers_sk_leaf, covers_t,
    covers_t1, covers_t2, covers_t3, has_f_covering, CoverReport, Detector, PatternQuery, TrianglePositions,
    VertexCover,
};
pub use embed::{find_rooted_embedding, EmbedContext};
pub use matching::{erdos_gallai_bound, has_matching_of_size, max_matching, Matching};
pub use pattern::{NamedPattern, Pattern, MAX_PATTERN_VERTICES};
pub use structure::{classify_no3matching, longest_cycle_length, NoMatchingClass};
