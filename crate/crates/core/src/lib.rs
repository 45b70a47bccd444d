pub mod corpus;
pub mod english;
pub mod ltl;
pub mod semantic;
pub mod translate;
pub mod time;
pub mod partition;
pub mod synthesis;
pub mod localize;
pub mod oracles;
pub mod pipeline;
