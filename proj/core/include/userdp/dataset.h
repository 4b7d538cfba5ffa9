// Copyright 2026 The userdp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef USERDP_DATASET_H_
#define USERDP_DATASET_H_

#include <cstddef>
#include <vector>

namespace userdp {

// Privacy parameters for an (epsilon, delta)-DP mechanism. The analysis
// behind the noise calibrations assumes 0 < epsilon < 10 and 0 < delta < 1,
// so construction enforces those ranges.
struct PrivacyBudget {
  double epsilon;
  double delta;

  PrivacyBudget(double epsilon, double delta);
};

using UserItems = std::vector<std::vector<double>>;

// Read-only view of n users, each holding m items of dimension d. The unit
// of privacy is one user (all m of their items together). Virtual so tests
// can interpose counting/sentinel wrappers to audit data access paths.
class UserDataView {
 public:
  virtual ~UserDataView() = default;

  virtual std::size_t n() const = 0;
  virtual std::size_t m() const = 0;
  virtual std::size_t d() const = 0;
  virtual const UserItems& user(std::size_t i) const = 0;
};

// Owning rectangular dataset: n users x m items x d coordinates.
class UserDataset final : public UserDataView {
 public:
  // Zero-filled dataset of the given shape. Throws std::invalid_argument if
  // any of n, m, d is zero.
  UserDataset(std::size_t n, std::size_t m, std::size_t d);

  // Takes ownership of explicit items; validates the rectangular shape.
  explicit UserDataset(std::vector<UserItems> users);

  std::size_t n() const override { return users_.size(); }
  std::size_t m() const override { return m_; }
  std::size_t d() const override { return d_; }
  const UserItems& user(std::size_t i) const override;

  UserItems& mutable_user(std::size_t i);
  std::vector<double>& mutable_item(std::size_t i, std::size_t j);

 private:
  std::vector<UserItems> users_;
  std::size_t m_ = 0;
  std::size_t d_ = 0;
};

// Non-owning contiguous slice of [begin, begin + count) users of a parent
// view; used to hand disjoint user blocks to localization phases.
class UserSliceView final : public UserDataView {
 public:
  UserSliceView(const UserDataView& parent, std::size_t begin,
                std::size_t count);

  std::size_t n() const override { return count_; }
  std::size_t m() const override { return parent_->m(); }
  std::size_t d() const override { return parent_->d(); }
  const UserItems& user(std::size_t i) const override;

 private:
  const UserDataView* parent_;
  std::size_t begin_;
  std::size_t count_;
};

}  // namespace userdp

#endif  // USERDP_DATASET_H_
