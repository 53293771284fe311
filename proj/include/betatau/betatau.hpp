#pragma once

#include <betatau/binary_word.hpp>
#include <betatau/critical.hpp>
#include <betatau/error.hpp>
#include <betatau/expansions.hpp>
#include <betatau/intervals.hpp>
#include <betatau/real.hpp>
#include <betatau/sequence.hpp>
#include <betatau/survivor.hpp>
#include <betatau/words.hpp>
