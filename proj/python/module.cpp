#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heegrank/commands.hpp"
#include "heegrank/forms.hpp"
#include "heegrank/recurrence.hpp"

namespace py = pybind11;
using namespace heegrank;

namespace {

// (exit code, canonical report text)
std::pair<int, std::string> emit(const CommandResult& r) {
  return {r.exit_code, serialize(r.report)};
}

const Catalog& pick(const std::optional<std::string>& path, std::optional<Catalog>& holder) {
  if (!path) return Catalog::bundled();
  holder = Catalog::load(*path);
  return *holder;
}

}  // namespace

PYBIND11_MODULE(_heegrank, m) {
  m.attr("__version__") = kVersion;

  static py::exception<Error> exc(m, "HeegrankError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, e.what());
    }
  });

  m.def("kronecker", [](std::int64_t a, std::int64_t n) {
    return kronecker(Integer(a), Integer(n));
  });
  m.def("class_number", &class_number);
  m.def("reduced_forms", [](std::int64_t disc) {
    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
    for (const auto& f : reduced_forms(disc)) out.emplace_back(f.A, f.B, f.C);
    return out;
  });
  m.def("count_ap", [](std::int64_t a, std::int64_t b, std::uint64_t conductor, std::uint64_t p) {
    return count_ap(CurveQ(Integer(a), Integer(b), conductor), p);
  });
  m.def("recurrence", [](std::int64_t c0, std::int64_t c1, std::int64_t ap, std::uint64_t p,
                         std::size_t steps) {
    std::vector<std::string> out;
    for (const auto& c : generate(Integer(c0), Integer(c1), ap, p, steps).seq)
      out.push_back(to_string(c));
    return out;
  });

  m.def("cmd_ap", [](const std::string& label, std::uint64_t max_prime,
                     std::optional<std::string> cache, std::optional<std::string> catalog) {
    std::optional<Catalog> holder;
    return emit(cmd_ap(pick(catalog, holder), {label, max_prime, cache}));
  }, py::arg("label"), py::arg("max_prime") = 100, py::arg("cache") = py::none(),
     py::arg("catalog") = py::none());

  m.def("cmd_witness", [](const std::string& label, std::size_t count, std::uint64_t bound,
                          std::optional<std::string> catalog) {
    std::optional<Catalog> holder;
    return emit(cmd_witness(pick(catalog, holder), {label, count, bound, std::nullopt}));
  }, py::arg("label"), py::arg("count") = 5, py::arg("bound") = 100000,
     py::arg("catalog") = py::none());

  m.def("cmd_classfield", [](std::int64_t fund_disc, std::int64_t conductor,
                             std::optional<std::int64_t> prime, int nmax,
                             std::optional<std::pair<std::int64_t, std::int64_t>> inert_step) {
    ClassFieldOptions o;
    o.fund_disc = fund_disc;
    o.conductor = conductor;
    o.prime = prime;
    o.nmax = nmax;
    o.inert_step = inert_step;
    return emit(cmd_classfield(o));
  }, py::arg("fund_disc"), py::arg("conductor") = 1, py::arg("prime") = py::none(),
     py::arg("nmax") = 3, py::arg("inert_step") = py::none());

  m.def("cmd_heegner", [](const std::string& label, std::int64_t fund_disc,
                          std::optional<std::uint64_t> verify_inert,
                          std::optional<std::uint64_t> verify_tower, unsigned precision,
                          std::optional<std::string> catalog) {
    std::optional<Catalog> holder;
    HeegnerOptions o;
    o.label = label;
    o.fund_disc = fund_disc;
    o.verify_inert = verify_inert;
    o.verify_tower = verify_tower;
    o.precision = precision;
    return emit(cmd_heegner(pick(catalog, holder), o));
  }, py::arg("label"), py::arg("fund_disc"), py::arg("verify_inert") = py::none(),
     py::arg("verify_tower") = py::none(), py::arg("precision") = 30,
     py::arg("catalog") = py::none());

  m.def("cmd_primesearch", [](const std::string& label, std::int64_t fund_disc, std::uint64_t p,
                              std::uint64_t bound, std::optional<std::string> catalog) {
    std::optional<Catalog> holder;
    return emit(cmd_primesearch(pick(catalog, holder), {label, fund_disc, p, bound}));
  }, py::arg("label"), py::arg("fund_disc"), py::arg("p"), py::arg("bound") = 10000,
     py::arg("catalog") = py::none());

  m.def("cmd_recurrence", [](std::uint64_t p, std::int64_t ap, const std::string& c0,
                             const std::string& c1, std::size_t steps) {
    return emit(cmd_recurrence({p, ap, c0, c1, steps}));
  }, py::arg("p"), py::arg("ap"), py::arg("c0") = "1", py::arg("c1") = "0",
     py::arg("steps") = 40);
}
