fn main() {
    std::process::exit(coxeter_hecke::cli::main_entry());
}
