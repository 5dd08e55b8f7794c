#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "pwfd/errors.hpp"
#include "pwfd/field_io.hpp"

namespace fs = std::filesystem;

namespace {

class FieldIo : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pwfd_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    grid_ = {7, 5, 2.5, 0.8, -1.0, 3.0};
    field_ = pwfd::Field(grid_);
    std::mt19937 rng(1);
    std::normal_distribution<double> d;
    for (auto& v : field_.values()) v = {d(rng) * 1e-7, d(rng) * 1e5};
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  pwfd::GridSpec grid_;
  pwfd::Field field_;
};

TEST_F(FieldIo, CsvRoundTripIsExact) {
  pwfd::write_field_csv(dir_ / "f", field_);
  EXPECT_TRUE(fs::exists(dir_ / "f_re.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "f_im.csv"));
  const auto back = pwfd::read_field_csv(dir_ / "f", grid_);
  EXPECT_EQ(back.values(), field_.values());
}

TEST_F(FieldIo, BinaryRoundTripKeepsGrid) {
  pwfd::write_field_binary(dir_ / "g", field_);
  EXPECT_EQ(fs::file_size(dir_ / "g.bin"), grid_.size() * 16);
  const auto back = pwfd::read_field_binary(dir_ / "g");
  EXPECT_EQ(back.values(), field_.values());
  EXPECT_EQ(back.grid().nx, 7);
  EXPECT_EQ(back.grid().nz, 5);
  EXPECT_DOUBLE_EQ(back.grid().gamma, 0.8);
  EXPECT_DOUBLE_EQ(back.grid().z0, 3.0);
}

TEST_F(FieldIo, ShapeMismatchIsAnIoError) {
  pwfd::write_field_csv(dir_ / "f", field_);
  pwfd::GridSpec other = grid_;
  other.nx = 8;
  EXPECT_THROW(pwfd::read_field_csv(dir_ / "f", other), pwfd::IoError);
}

TEST_F(FieldIo, TruncatedBinaryIsAnIoError) {
  pwfd::write_field_binary(dir_ / "g", field_);
  fs::resize_file(dir_ / "g.bin", 40);
  EXPECT_THROW(pwfd::read_field_binary(dir_ / "g"), pwfd::IoError);
}

TEST_F(FieldIo, MissingOrMalformedInput) {
  EXPECT_THROW(pwfd::read_field_binary(dir_ / "none"), pwfd::IoError);
  std::ofstream(dir_ / "v.csv") << "1,2,3\n4,x,6\n";
  EXPECT_THROW(pwfd::read_real_grid_csv(dir_ / "v.csv", 3, 2), pwfd::IoError);
  std::ofstream(dir_ / "w.csv") << "1,2,3\n4,5,6\n";
  EXPECT_EQ(pwfd::read_real_grid_csv(dir_ / "w.csv", 3, 2), (std::vector<double>{1, 2, 3, 4, 5, 6}));
  EXPECT_THROW(pwfd::read_real_grid_csv(dir_ / "w.csv", 2, 3), pwfd::IoError);
}

}  // namespace
