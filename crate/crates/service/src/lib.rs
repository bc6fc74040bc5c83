//! Interactive play over HTTP: a human takes one side of the accelerated
//! n-in-a-row game and an engine strategy answers each move.
//!
//! Sessions live in memory. With a [`Store`] they are also written to disk
//! as metadata plus an append-only transcript and restored on start-up by
//! replaying the transcript.

pub mod http;
pub mod session;
pub mod store;

pub use http::{router, serve, AppState};
pub use session::{CreateGame, ServiceError, Session, SessionMeta, Side, Status};
pub use store::Store;
