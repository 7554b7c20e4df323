#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "iraug/error.hpp"
#include "iraug/tabular.hpp"

using namespace iraug;

namespace {
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an iraug::Error");
  return ErrorCode::InvalidArgument;
}
}  // namespace

TEST_CASE("csv: numeric table with named target") {
  const auto ds = parse_csv("a,b,y\n1,2,3\n4,5,6\n7,8,9\n", "y");
  CHECK(ds.n_cols() == 3);
  CHECK(ds.n_rows() == 3);
  CHECK(ds.target_index() == 2);
  CHECK(ds.cell(1, 0) == 4.0);
  CHECK(ds.target()[2] == 9.0);
}

TEST_CASE("csv: text column becomes nominal") {
  const auto ds = parse_csv("c,y\nred,1\nblue,2\nred,3\n", "y");
  const auto& c = ds.column(0);
  CHECK(c.is_nominal());
  CHECK(c.n_categories() == 2);
  CHECK(c.categories[static_cast<std::size_t>(c.values[0])] == "red");
  CHECK(c.categories[static_cast<std::size_t>(c.values[1])] == "blue");
  CHECK(c.values[0] == c.values[2]);
}

TEST_CASE("csv: kind override turns numeric codes into categories") {
  const auto ds = parse_csv("g,y\n1,1\n2,2\n1,3\n", "y", {{"g", ColumnKind::Nominal}});
  CHECK(ds.column(0).is_nominal());
  CHECK(ds.column(0).n_categories() == 2);
}

TEST_CASE("csv: error paths") {
  CHECK(code_of([] { (void)parse_csv("a,b\n1,2\n", "y"); }) == ErrorCode::MissingTarget);
  CHECK(code_of([] { (void)parse_csv("", "y"); }) == ErrorCode::EmptyFile);
  CHECK(code_of([] { (void)parse_csv("a,y\n1,2\n3\n", "y"); }) == ErrorCode::RaggedRow);
  CHECK(code_of([] { (void)parse_csv("a,y\n1,2\n?,3\n", "y"); }) == ErrorCode::MissingValue);
  CHECK(code_of([] { (void)parse_csv("a,y\n1,2\n,3\n", "y"); }) == ErrorCode::MissingValue);
  CHECK(code_of([] { (void)parse_csv("a,y\n1,x\n2,z\n", "y"); }) == ErrorCode::UnparseableCell);
}

TEST_CASE("csv: quoted fields and round trip") {
  const auto ds = parse_csv("name,x,y\n\"a, b\",0.1,1e-3\nplain,2,3.25\n", "y");
  CHECK(ds.column(0).categories[0] == "a, b");
  const auto again = parse_csv(to_csv(ds), "y");
  CHECK(again == ds);
}

TEST_CASE("csv: numbers survive the writer bit for bit") {
  const auto ds = fixture::mixed(50, 3, 2, 7);
  const auto back = parse_csv(to_csv(ds), "y", {{"n0", ColumnKind::Nominal}, {"n1", ColumnKind::Nominal}});
  for (std::size_t c = 0; c < ds.n_cols(); ++c) {
    if (ds.column(c).is_nominal()) continue;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) CHECK(back.cell(r, c) == ds.cell(r, c));
  }
}

TEST_CASE("csv: provenance column is appended last") {
  const auto ds = parse_csv("x,y\n1,2\n3,4\n", "y");
  const std::vector<std::string> tags{"original", "synthetic"};
  const auto text = to_csv(ds, &tags, "provenance");
  CHECK(text == "x,y,provenance\n1,2,original\n3,4,synthetic\n");
}

TEST_CASE("csv: empty target name selects the last column") {
  const auto ds = parse_csv("a,b,z\n1,2,3\n", "");
  CHECK(ds.target_index() == 2);
}

constexpr const char* kArff = R"(% comment line
@RELATION toy
@attribute motor {A,B,C}
@Attribute 'screw type' {X,Y}
@ATTRIBUTE pgain real
@attribute y numeric

@data
A,X,3,1.5
% inline comment
C,Y,4,2.5
B,X,5,0.5
)";

TEST_CASE("arff: declared kinds and declaration-order codes") {
  const auto ds = parse_arff(kArff, "y");
  CHECK(ds.n_rows() == 3);
  CHECK(ds.n_cols() == 4);
  CHECK(ds.column(0).is_nominal());
  CHECK(ds.column(1).is_nominal());
  CHECK(ds.column(1).name == "screw type");
  CHECK_FALSE(ds.column(2).is_nominal());
  CHECK(ds.column(0).categories == std::vector<std::string>{"A", "B", "C"});
  CHECK(ds.cell(1, 0) == 2.0);
  CHECK(ds.cell(2, 0) == 1.0);
  CHECK(ds.target_index() == 3);
}

TEST_CASE("arff: error paths") {
  CHECK(code_of([] { (void)parse_arff("@relation r\n@attribute c {a,b}\n@attribute y numeric\n@data\nz,1\n", "y"); }) ==
        ErrorCode::UndeclaredCategory);
  CHECK(code_of([] { (void)parse_arff("@relation r\n@attribute x numeric\n@attribute y numeric\n@data\n{0 1, 1 2}\n", "y"); }) ==
        ErrorCode::UnsupportedFormat);
  CHECK(code_of([] { (void)parse_arff("@relation r\n@attribute x\n@data\n1\n", "x"); }) == ErrorCode::MalformedHeader);
  CHECK(code_of([] { (void)parse_arff("@relation r\n@attribute x numeric\n@data\n1\n", "y"); }) == ErrorCode::MissingTarget);
}

TEST_CASE("column summary") {
  const auto ds = fixture::xy({1, 2, 3, 4, 5, 6, 7, 8, 9}, {5, 5, 5, 5, 5, 5, 5, 5, 5});
  const auto s = column_summary(ds, 0);
  CHECK(s.q1 == doctest::Approx(3));
  CHECK(s.median == doctest::Approx(5));
  CHECK(s.q3 == doctest::Approx(7));
  CHECK(s.min == 1);
  CHECK(s.max == 9);
  const auto k = column_summary(ds, 1);
  CHECK(k.std == 0);
  CHECK(k.q1 == 5);
  CHECK(k.median == 5);
  CHECK(k.q3 == 5);

  const Dataset nom({fixture::nominal("c", {"a", "b"}, {0, 0, 1}), fixture::numeric("y", {1, 2, 3})}, 1);
  const auto c = column_summary(nom, 0);
  CHECK(c.category_counts.at("a") == 2);
  CHECK(c.category_counts.at("b") == 1);
}

TEST_CASE("row selection, concat and rebuild") {
  const auto ds = fixture::xy({1, 2, 3}, {10, 20, 30});
  const std::vector<std::size_t> rows{2, 0, 2};
  const auto sel = ds.select_rows(rows);
  CHECK(sel.n_rows() == 3);
  CHECK(sel.target()[0] == 30);
  CHECK(sel.target()[1] == 10);
  const auto cat = ds.concat(sel);
  CHECK(cat.n_rows() == 6);
  CHECK(cat.same_schema(ds));
  const auto rebuilt = ds.with_rows({ds.row(0), ds.row(1), ds.row(2)});
  CHECK(rebuilt == ds);
}

TEST_CASE("servo.arff when available") {
  const char* dir = std::getenv("IR_AUGMENT_DATA_DIR");
  const std::filesystem::path path = std::filesystem::path(dir ? dir : IRAUG_DATA_DIR) / "servo.arff";
  if (!std::filesystem::exists(path)) {
    MESSAGE("servo.arff not present; skipped");
    return;
  }
  const auto ds = load_dataset(path, "");
  CHECK(ds.n_rows() == 167);
  CHECK(ds.n_cols() == 5);
}
