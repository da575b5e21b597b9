#include "hexagon_data.hpp"

namespace ballmap {

// index = power of t
const std::vector<std::string>& hexagon_h_coefficients() {
  static const std::vector<std::string> c = {
      "2",
      "0",
      "-1/8",
      "-1/6",
      "-132022313339010089934748996284139958625614088083058661615643/11558411055895884489273367067925573721788800978176819200000",
      "-7362117782018690715541516858507252889735560321011407953/510551820260620005649582920644652046380065933328000000",
      "1135847093359630638538403956445142918501566447380671798346253777/25470327520870569142645488811853098145481308471317931520000000",
      "1631979839386110496201193087227698207675223532405371249967/30633109215637200338974975238679122782803955999680000000",
      "-11695393745625246285991189606549798699384856308791698561139404628187/139373632194203754348556114778460153052073719955051721277440000000",
      "-14424739984071336997741067336445906355369656570801663620093/157541704537562744600442729798921202882991773712640000000",
      "5444857799367724341614972148198281098432336302759938935926034370597/56587790514939870186631806000277054622646472763705210142720000000",
      "489624276273750826348881432522588958622036832178716706790257/5178327331756410213823247988173236059980077431598080000000",
      "-29977661421428095114360408317401194506069501391456164973924272457861/408199383782345911041194858198608719447429471325981990453248000000",
      "-106279014558443243149270242653074552792653941625109030932479/1642779705246861171281857982454957646614369392093184000000",
      "6496934190786413999058459578468782136581293765475784303435117586589/166094921676954543113313769887709754809643715918847844391321600000",
      "76038476443389770380096278588852356368626040742215775927/2460775384925566837147411234049265069825243407577600000",
      "-10936887264822748056498590600656508762604715166403711626815259269679/729811019489648750043348382839936801436313297219179922325504000000",
      "-15343314371199209768200722187083411564089297923735661841193/1443654892489665877793147923975568840964142799112192000000",
      "3073703987676894324210366665805746792617837392955601774090905999873/729811019489648750043348382839936801436313297219179922325504000000",
      "21278895451981505723409875956831063512932611500243467814443/7940101908693162327862313581865628625302785395117056000000",
      "-108429710987186801524931157295746273363317657983915070157800658683/123506480221325173084258957095989304858453019529399679162777600000",
      "-26872808849517631782827161438579675458460680303908554289/53831199380970592053303820894004261866459562000793600000",
      "1092968886400506955836901798243093407953206769838766664682946289821/8027921214386136250476832211239304815799446269410979145580544000000",
      "191534650791625808889042148881672737990833829426795743/2793843036134117638234452351113873548663893523968000000",
      "-617678727783923372994726045176856180266061575815960662776038981/39546409923084415026979469020883274954677075218773296283648000000",
      "-1844015505082748933043548683479792565506942192402271751/269155996904852960266519104470021309332297810003968000000",
      "2276284563512474920119374134981072455831492763452604504854047611/1745200263996986141408007002443327133869444841176299814256640000000",
      "739549879853169825818932859020391314048855175653852243/1526942674748685063050444919589543966404381806753280000000",
      "-2312987243313117187847123345648030529341762836741812156033242153/30104704553948010939288120792147393059247923510291171795927040000000",
      "-341651515368750302761136090666887873089921143003186509/14887691078799679364741837965998053672442722615844480000000",
      "22685040173892809529211504901998267843669377577565665759314889/7526176138487002734822030198036848264811980877572792948981760000000",
      "83892235220371692608393905913301582885887545485043/128342164472411029006395154879293566141747608757280000000",
      "-912613527484440059374721830348026508601541166858620900719/12976165756012073680727638272477324594503415306159987843072000000",
      "-78717893577241614088318159777360793613982855123/9304806924249799602963648728748783545276701634902800000",
      "76664779821250669077010607272790474060504126133999431/104530224145652815761417086083845114789055289966288790958080000",
  };
  return c;
}

}  // namespace ballmap
