#pragma once

#include <stdexcept>
#include <string>

namespace incsyn {

// Error hierarchy shared by all modules. Everything fatal derives from
// incsyn::error so the CLI can map any failure to a machine-readable exit.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct no_data_for_input : error {
    explicit no_data_for_input(const std::string& what) : error(what) {}
};

struct out_of_domain : error {
    explicit out_of_domain(const std::string& what) : error(what) {}
};

struct monotonicity_violation : error {
    explicit monotonicity_violation(const std::string& what) : error(what) {}
};

struct dangling_branch : error {
    explicit dangling_branch(const std::string& what) : error(what) {}
};

struct broken_lasso : error {
    explicit broken_lasso(const std::string& what) : error(what) {}
};

struct vertex_is_top : error {
    explicit vertex_is_top(const std::string& what) : error(what) {}
};

struct not_winning : error {
    explicit not_winning(const std::string& what) : error(what) {}
};

struct too_large : error {
    explicit too_large(const std::string& what) : error(what) {}
};

struct region_mismatch : error {
    explicit region_mismatch(const std::string& what) : error(what) {}
};

struct io_error : error {
    explicit io_error(const std::string& what) : error(what) {}
};

} // namespace incsyn
