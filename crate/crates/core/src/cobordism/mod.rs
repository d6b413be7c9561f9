//! Chain maps induced by elementary string interactions, movies of surfaces,
//! and the closed and punctured surface invariants.

mod chain_map;
mod movie;
mod r3;
mod rules;

pub use chain_map::{induces_identity, ChainMap, MapKind};
pub use movie::{
    bn_invariant, closed_value, connected_sum, eval_movie, eval_movie_with, kj_number, lee_number, movie_maps,
    normalize_sign, punctured_eval, validate_movie, Movie, MovieEnd, Punctured, Report,
};
pub use rules::esi_chain_map;
