pub mod algebra;
pub mod budget;
pub mod exactlin;
pub mod simplicial;
pub mod hochschild;
pub mod homalg;
pub mod verify;
pub mod cli;
