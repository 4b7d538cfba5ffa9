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

#include "userdp/dataset.h"

#include <stdexcept>
#include <string>

namespace userdp {

PrivacyBudget::PrivacyBudget(double epsilon, double delta)
    : epsilon(epsilon), delta(delta) {
  if (!(epsilon > 0.0) || !(epsilon < 10.0)) {
    throw std::invalid_argument(
        "PrivacyBudget: epsilon must lie in (0, 10), got " +
        std::to_string(epsilon));
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument(
        "PrivacyBudget: delta must lie in (0, 1), got " +
        std::to_string(delta));
  }
}

UserDataset::UserDataset(std::size_t n, std::size_t m, std::size_t d)
    : m_(m), d_(d) {
  if (n == 0 || m == 0 || d == 0) {
    throw std::invalid_argument("UserDataset: n, m, d must all be positive");
  }
  users_.assign(n, UserItems(m, std::vector<double>(d, 0.0)));
}

UserDataset::UserDataset(std::vector<UserItems> users)
    : users_(std::move(users)) {
  if (users_.empty() || users_[0].empty() || users_[0][0].empty()) {
    throw std::invalid_argument("UserDataset: n, m, d must all be positive");
  }
  m_ = users_[0].size();
  d_ = users_[0][0].size();
  for (const UserItems& items : users_) {
    if (items.size() != m_) {
      throw std::invalid_argument("UserDataset: all users must hold m items");
    }
    for (const std::vector<double>& item : items) {
      if (item.size() != d_) {
        throw std::invalid_argument(
            "UserDataset: all items must have dimension d");
      }
    }
  }
}

const UserItems& UserDataset::user(std::size_t i) const {
  if (i >= users_.size()) {
    throw std::out_of_range("UserDataset: user index out of range");
  }
  return users_[i];
}

UserItems& UserDataset::mutable_user(std::size_t i) {
  if (i >= users_.size()) {
    throw std::out_of_range("UserDataset: user index out of range");
  }
  return users_[i];
}

std::vector<double>& UserDataset::mutable_item(std::size_t i, std::size_t j) {
  UserItems& items = mutable_user(i);
  if (j >= items.size()) {
    throw std::out_of_range("UserDataset: item index out of range");
  }
  return items[j];
}

UserSliceView::UserSliceView(const UserDataView& parent, std::size_t begin,
                             std::size_t count)
    : parent_(&parent), begin_(begin), count_(count) {
  if (count == 0 || begin + count > parent.n()) {
    throw std::invalid_argument("UserSliceView: slice out of range or empty");
  }
}

const UserItems& UserSliceView::user(std::size_t i) const {
  if (i >= count_) {
    throw std::out_of_range("UserSliceView: user index out of range");
  }
  return parent_->user(begin_ + i);
}

}  // namespace userdp
