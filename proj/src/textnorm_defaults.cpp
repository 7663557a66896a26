#include "aescap/textnorm.hpp"

namespace aescap {

namespace {

// Versioned default lists; data/normalization.cfg ships the same text and a
// unit test keeps the two in sync. The noun-exclusion list is an editorial
// choice (object nouns that describe scene content rather than aesthetics),
// documented in the README.
constexpr const char* kBuiltinConfig = R"cfg(
# aescap normalization lists, v1

[stopwords]
i
me
my
myself
we
our
ours
ourselves
you
your
yours
yourself
yourselves
he
him
his
himself
she
her
hers
herself
it
its
itself
they
them
their
theirs
themselves
what
which
who
whom
this
that
these
those
am
is
are
was
were
be
been
being
have
has
had
having
do
does
did
doing
a
an
the
and
but
if
or
because
as
until
while
of
at
by
for
with
about
against
between
into
through
during
before
after
above
below
to
from
up
down
in
out
on
off
over
under
again
further
then
once
here
there
when
where
why
how
all
any
both
each
few
more
most
other
some
such
no
nor
not
only
own
same
so
than
too
very
can
will
just
should
would
could
now
don't
doesn't
didn't
isn't
aren't
wasn't
weren't
hasn't
haven't
hadn't
won't
wouldn't
shouldn't
couldn't
can't
cannot
i'm
i've
i'd
i'll
it's
that's
you're
you've
there's
what's
he's
she's
we're
they're
let's

[function_words]
really
quite
also
even
still
yet
almost
always
never
often
sometimes
usually
perhaps
maybe
rather
somewhat
however
although
though
unless
whereas
moreover
furthermore
meanwhile
instead
anyway
besides
therefore
thus
hence
indeed
certainly
definitely
probably
possibly
actually
basically
especially
extremely
fairly
highly
mostly
nearly
seriously
simply
slightly
somehow
together
totally
truly
absolutely
completely
particularly
among
amongst
beneath
beside
beyond
despite
except
inside
outside
onto
toward
towards
upon
within
without
via
per
since
already
else

[variant_merge]
colour=color
grey=gray
centre=center
favourite=favorite
b&w=black&white

[noun_exclusion]
sky
tree
trees
water
grass
flower
flowers
dog
dogs
cat
cats
bird
birds
car
cars
house
building
buildings
man
woman
girl
boy
people
person
beach
mountain
mountains
street
road
city
sun
moon
table
chair
food
plate
)cfg";

}  // namespace

const NormalizationConfig& NormalizationConfig::builtin() {
  static const NormalizationConfig cfg = parse_text(kBuiltinConfig);
  return cfg;
}

}  // namespace aescap
