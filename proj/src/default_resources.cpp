// Shipped default resources. Every table here can be overridden by a file of
// the same format; `msq defaults <dir>` writes these out for editing.

#include <string_view>

#include "msq/aspects.hpp"
#include "msq/scoring.hpp"
#include "msq/textprep.hpp"

namespace msq {

std::string_view default_stoplist_text() {
  // English function words. Negation words (no, not, nor, never, t) are
  // deliberately absent so the sentiment scorer can see them.
  return R"(# default stoplist: one lowercase token per line
a
about
above
after
again
against
all
also
am
an
and
any
are
aren
as
at
be
because
been
before
being
below
between
both
but
by
can
could
couldn
d
did
didn
do
does
doesn
doing
don
down
during
each
even
few
for
from
further
get
got
had
hadn
has
hasn
have
haven
having
he
her
here
hers
herself
him
himself
his
how
i
if
in
into
is
isn
it
its
itself
just
ll
m
me
might
more
most
much
must
mustn
my
myself
now
o
of
off
on
once
only
or
other
our
ours
ourselves
out
over
own
re
really
s
same
shan
she
should
shouldn
so
some
such
than
that
the
their
theirs
them
themselves
then
there
these
they
this
those
through
to
too
under
until
up
us
ve
very
was
wasn
we
were
weren
what
when
where
which
while
who
whom
why
will
with
won
would
wouldn
y
you
your
yours
yourself
yourselves
)";
}

std::string_view default_lemma_rules_text() {
  return R"(# suffix	replacement	min_stem_len  (first match wins)
ies	y	2
sses	ss	1
shes	sh	1
ches	ch	1
xes	x	1
ss	ss	0
us	us	0
is	is	0
s		3
eed	eed	0
ied	y	2
iked	ike	1
oved	ove	1
ated	ate	2
ized	ize	2
ured	ure	2
pped	p	2
tted	t	2
gged	g	2
nned	n	2
mmed	m	2
ed		3
ying	y	2
iking	ike	1
oving	ove	1
ating	ate	2
izing	ize	2
pping	p	2
tting	t	2
gging	g	2
nning	n	2
mming	m	2
ing		3
)";
}

std::string_view default_lemma_exceptions_text() {
  return R"(# form	lemma  (multi-token forms are space separated)
wi fi	wifi
children	child
men	man
women	woman
feet	foot
teeth	tooth
mice	mouse
went	go
gone	go
came	come
made	make
took	take
felt	feel
found	find
left	leave
slept	sleep
ate	eat
bought	buy
told	tell
brought	bring
kept	keep
met	meet
paid	pay
said	say
thought	think
saw	see
gave	give
knew	know
ran	run
anything	anything
bedding	bedding
booking	booking
building	building
ceiling	ceiling
clothing	clothing
evening	evening
everything	everything
feeling	feeling
heating	heating
king	king
lighting	lighting
meeting	meeting
morning	morning
nothing	nothing
parking	parking
ring	ring
series	series
shopping	shopping
sing	sing
something	something
species	species
spring	spring
string	string
thing	thing
news	news
gas	gas
wedding	wedding
yes	yes
)";
}

std::string_view default_sentiment_lexicon_text() {
  return R"(# term	polarity (+1 / -1); terms are lemmatized on load
good	1
great	1
excellent	1
amazing	1
awesome	1
wonderful	1
fantastic	1
perfect	1
nice	1
lovely	1
beautiful	1
clean	1
comfortable	1
cozy	1
cosy	1
convenient	1
friendly	1
helpful	1
kind	1
welcoming	1
responsive	1
quiet	1
spacious	1
love	1
like	1
enjoy	1
recommend	1
best	1
better	1
happy	1
pleasant	1
delightful	1
charming	1
gorgeous	1
stunning	1
superb	1
fabulous	1
brilliant	1
outstanding	1
exceptional	1
impeccable	1
spotless	1
tidy	1
neat	1
modern	1
bright	1
safe	1
warm	1
attentive	1
accommodating	1
generous	1
hospitable	1
thoughtful	1
easy	1
smooth	1
fast	1
quick	1
ideal	1
terrific	1
fun	1
relaxing	1
peaceful	1
polite	1
professional	1
reliable	1
affordable	1
satisfied	1
pleased	1
glad	1
thank	1
appreciate	1
impressed	1
incredible	1
stylish	1
cute	1
bad	-1
poor	-1
terrible	-1
horrible	-1
awful	-1
dirty	-1
noisy	-1
loud	-1
rude	-1
uncomfortable	-1
smelly	-1
smell	-1
stink	-1
broken	-1
disappointing	-1
worst	-1
worse	-1
unfriendly	-1
unhelpful	-1
unresponsive	-1
cold	-1
expensive	-1
overpriced	-1
cramped	-1
filthy	-1
disgusting	-1
gross	-1
hate	-1
dislike	-1
problem	-1
issue	-1
complaint	-1
complain	-1
unsafe	-1
dangerous	-1
scary	-1
mess	-1
messy	-1
stain	-1
mold	-1
moldy	-1
bug	-1
cockroach	-1
cancel	-1
late	-1
delay	-1
slow	-1
difficult	-1
inconvenient	-1
unclean	-1
damp	-1
leak	-1
annoying	-1
awkward	-1
unpleasant	-1
)";
}

std::string_view default_negators_text() {
  return R"(# negation words; t comes from contractions such as didn't
not
no
never
t
nothing
nobody
none
neither
nor
without
hardly
barely
cannot
)";
}

std::string_view default_aspect_model_json() {
  // Representative topical words per service aspect. Seeds are normalized
  // through the tokenizer and lemmatizer on load ("Wi-Fi" -> "wifi").
  return R"({
  "Booking process": ["check", "checkout", "booking", "payment", "app", "detail", "admission"],
  "Cleanness": ["clean", "trash", "neatness", "tidying", "sanitation", "washing"],
  "Climate": ["weather", "sunshine", "cloud", "storm", "season", "climate"],
  "Communication": ["talk", "advice", "describe", "telling", "guide", "tip", "communication", "chat", "email"],
  "Event": ["anniversary", "party", "entertainment", "carnival", "concert", "festival"],
  "Experience": ["feeling", "experience", "memory", "mentality", "sense"],
  "Facility": ["freezer", "microwave", "bathtub", "conditioner", "elevator", "television", "computer", "wireless", "Wi-Fi", "internet", "hotspot"],
  "Food and drink": ["food", "meal", "eat", "dinner", "coffee", "cook", "tea"],
  "Host": ["care", "compliment", "supporting", "share", "help", "assistance", "service", "operation", "attitude", "skill"],
  "Macro environment": ["public", "nature", "citizen", "country", "area", "community", "local", "surrounding", "culture"],
  "Mate": ["roommate", "stranger", "friend", "flatmate", "guest", "homie"],
  "Nearby": ["neighborhood", "restaurant", "barbershop", "park", "theater", "bar", "bakery"],
  "Property attribute": ["condo", "apartment", "loft", "penthouse", "door", "bedroom", "lobby", "space", "architecture", "renovation", "decoration"],
  "Security": ["harm", "scare", "attack", "guard", "injury", "risk", "fear", "surveillance"],
  "Shopping": ["store", "purchase", "product", "discount", "shop", "grocery"],
  "Sleeping": ["sleep", "nightmare", "nap", "insomnia", "bedding", "wake", "noise"],
  "Transportation": ["transport", "taxi", "metro", "bus", "railway", "station", "access", "congestion", "distance", "route"],
  "Value": ["cost", "value", "worth", "benefit", "expense", "fee"]
}
)";
}

std::string_view default_dimension_model_json() {
  return R"({
  "High adjustability": {
    "description": "Services that can be changed by the host with no additional costs",
    "aspects": ["Communication", "Mate", "Cleanness", "Booking process", "Host", "Experience"]
  },
  "Medium adjustability": {
    "description": "Services that can be manipulated by the host but require additional costs",
    "aspects": ["Facility", "Property attribute", "Food and drink", "Security", "Sleeping", "Value"]
  },
  "Low adjustability": {
    "description": "Services that cannot really be controlled by the host",
    "aspects": ["Climate", "Event", "Macro environment", "Nearby", "Shopping", "Transportation"]
  }
}
)";
}

}  // namespace msq
